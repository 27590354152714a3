#include "isoperim/disk.hpp"

#include <cmath>

#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"

namespace isoperim::disk {

namespace {

// eps * cot(eps) - 1 for eps = pi/2 - theta; the series avoids cancellation near pi/2.
double eps_cot_minus_one(double eps) {
  if (eps < 0.1) {
    const double e2 = eps * eps;
    return -e2 * (1.0 / 3.0 + e2 * (1.0 / 45.0 + e2 * (2.0 / 945.0 + e2 / 4725.0)));
  }
  return eps / std::tan(eps) - 1.0;
}

// tan(theta), taken from whichever side keeps full precision.
double tan_theta(double theta) {
  return theta < 0.25 * kPi ? std::tan(theta) : 1.0 / std::tan(0.5 * kPi - theta);
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 0.5 * kPi)) {
    throw Error(ErrorKind::OutOfRange, "disk half-angle must lie in (0, pi/2]");
  }
}

}  // namespace

double theta_to_area(double theta) {
  check_theta(theta);
  const double eps = 0.5 * kPi - theta;
  if (eps <= 0.0) return 0.5 * kPi;
  const double t = tan_theta(theta);
  return theta + t * eps_cot_minus_one(eps);
}

double theta_to_length(double theta) {
  check_theta(theta);
  const double eps = 0.5 * kPi - theta;
  if (eps <= 0.0) return 2.0;
  return 2.0 * (1.0 + eps_cot_minus_one(eps));
}

DiskArcParam param(double theta) {
  check_theta(theta);
  const double eps = 0.5 * kPi - theta;
  return {theta, theta_to_area(theta), theta_to_length(theta), eps <= 0.0 ? 0.0 : 1.0 / tan_theta(theta)};
}

double area_to_theta(double area) {
  if (!(area > 0.0 && area <= 0.5 * kPi)) {
    throw Error(ErrorKind::OutOfRange, "disk cap area must lie in (0, pi/2]");
  }
  if (area == 0.5 * kPi) return 0.5 * kPi;
  return bisect([area](double th) { return th <= 0.0 ? -area : theta_to_area(th) - area; }, 0.0,
                0.5 * kPi, 1e-15);
}

double profile_I(double area) {
  if (!(area > 0.0 && area < kPi)) throw Error(ErrorKind::OutOfRange, "area must lie in (0, pi)");
  const double a = area > 0.5 * kPi ? kPi - area : area;
  return theta_to_length(area_to_theta(a));
}

PerfectArc disk_arc(double u, double theta) {
  check_theta(theta);
  const DiskArcParam p = param(theta);
  PerfectArc arc;
  arc.endpoint_thetas = {u - theta, u + theta};
  arc.start = unit_from_angle(u + theta);
  arc.end = unit_from_angle(u - theta);
  arc.start_tangent = -arc.start;
  arc.turning_angle = kPi - 2.0 * theta;
  arc.length = p.length;
  arc.enclosed_area = p.area;
  arc.contained = true;
  arc.orthogonality_residual = 0.0;
  if (p.curvature == 0.0) {
    arc.kind = ArcKind::Segment;
  } else {
    arc.kind = ArcKind::Circular;
    arc.curvature = p.curvature;
    arc.radius = 1.0 / p.curvature;
    arc.center = unit_from_angle(u) / std::sin(0.5 * kPi - theta);
  }
  return arc;
}

}  // namespace isoperim::disk
