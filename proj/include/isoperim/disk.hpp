#pragma once

#include "isoperim/arcs.hpp"

namespace isoperim::disk {

// Perfect arcs of the unit disk, indexed by the contact half-angle theta in (0, pi/2):
// the arc meets the circle at normal angles u - theta and u + theta, has radius tan(theta)
// and curvature cot(theta), and cuts off a cap of area theta_to_area(theta).
struct DiskArcParam {
  double theta = 0.0;
  double area = 0.0;
  double length = 0.0;
  double curvature = 0.0;
};

// a(theta) = theta - tan(theta) + (pi/2 - theta) tan^2(theta).
double theta_to_area(double theta);
// L(theta) = (pi - 2 theta) tan(theta).
double theta_to_length(double theta);
DiskArcParam param(double theta);

// Inverse of theta_to_area on (0, pi/2], by bisection.
double area_to_theta(double area);

// Isoperimetric profile of the unit disk on (0, pi), symmetric about pi/2.
double profile_I(double area);

// Perfect arc with contact half-angle theta, rotated counterclockwise by u.
PerfectArc disk_arc(double u, double theta);

}  // namespace isoperim::disk
