#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "isoperim/geometry.hpp"
#include "isoperim/vec2.hpp"

namespace isoperim {

enum class ArcKind { Circular, Segment };

// Circular arc or straight segment meeting the boundary orthogonally at both ends.
//
// Orientation: the enclosed region is bounded by the boundary run counterclockwise from
// endpoint_thetas.first to endpoint_thetas.second, closed by the arc travelling from
// C(second) back to C(first). The arc starts along -N(second), i.e. into the domain.
struct PerfectArc {
  ArcKind kind = ArcKind::Circular;
  Vec2 center;          // circular only
  double radius = 0.0;  // circular only
  // Signed: positive when the enclosed region lies inside the arc's circle. Zero for segments.
  double curvature = 0.0;
  // Boundary parameters of the two ends (normal angles for support-function curves).
  std::pair<double, double> endpoint_thetas;
  Vec2 start;  // C(endpoint_thetas.second)
  Vec2 end;    // C(endpoint_thetas.first)
  Vec2 start_tangent;
  double turning_angle = 0.0;  // signed rotation of the arc tangent from start to end
  double length = 0.0;
  double enclosed_area = 0.0;
  bool contained = false;
  double orthogonality_residual = 0.0;

  // Point a fraction x in [0, 1] of the way from start to end.
  Vec2 point_at(double x) const;
  // Unit tangent (direction of travel) at fraction x.
  Vec2 tangent_at(double x) const;
};

struct TwoPointState {
  double s1 = 0.0;
  double s2 = 0.0;
  double f_value = 0.0;
  std::pair<double, double> grad;  // arclength derivatives
};

struct ArcOptions {
  // Maximum orthogonality residual accepted as "perfect".
  double perfect_tol = 1e-8;
  bool require_perfect = true;
  bool test_containment = true;
  std::size_t containment_samples = 32;
};

// f(s1, s2) = (C1 - C2) . (N1 + N2).
double two_point_f(const Boundary& domain, double s1, double s2);

// (df/ds1, df/ds2) with respect to arclength, outward normals:
//   df/ds1 =  T1.N2 + k1 (C1 - C2).T1
//   df/ds2 = -T2.N1 + k2 (C1 - C2).T2
std::pair<double, double> two_point_grad(const Boundary& domain, double s1, double s2);

TwoPointState two_point_state(const Boundary& domain, double s1, double s2);

// g = (C1 - C2) . m with m the unit bisector of the outward normals taken counterclockwise
// from N1; f = 2 cos(dphi/2) g. Unlike f, g does not vanish on pairs with opposite normals
// unless the chord is parallel to them, so its zero set is exactly the set of perfect pairs.
double normalized_two_point(const Boundary& domain, double t1, double t2);

// Parameter derivatives (dg/dt1, dg/dt2).
std::pair<double, double> normalized_two_point_grad(const Boundary& domain, double t1, double t2);

// Largest residual of k1 (C1 - C2) = N1 - N2 = k2 (C1 - C2); zero exactly when both partial
// derivatives of f vanish at a perfect pair.
double degeneracy_residual(const Boundary& domain, double s1, double s2);

// Arc through C(s1), C(s2). The pair is unordered: both are reduced to (-pi, pi] and the
// smaller one becomes endpoint_thetas.first.
PerfectArc build_arc(const Boundary& domain, double s1, double s2, const ArcOptions& opt = {});

// Arc enclosing the region swept by the boundary counterclockwise from t_from to t_to.
PerfectArc build_arc_oriented(const Boundary& domain, double t_from, double t_to,
                              const ArcOptions& opt = {});

struct ContinuationOptions {
  double f_tol = 1e-12;
  int max_newton = 50;
  ArcOptions arc;
};

// Predictor-corrector continuation of the perfect pair `seed` (with seed.s1 < seed.s2 in the
// build_arc sense): s1 advances by ds each step and s2 is corrected by Newton, falling back to
// bisection in a +-5 ds window. Circles are routed through the closed-form disk arcs.
std::vector<PerfectArc> continue_family(const Boundary& domain, const TwoPointState& seed,
                                        std::size_t steps, double ds,
                                        const ContinuationOptions& opt = {});

struct VertexFamilyMember {
  double s1 = 0.0;  // arclength offset of the first end from the vertex
  double s2 = 0.0;  // arclength offset of the second end
  PerfectArc arc;
};

// Arclength derivatives of the curvature at theta: k, k', k'', k'''.
struct CurvatureJet {
  double k, dk, d2k, d3k;
};
CurvatureJet curvature_jet(const SupportCurve& curve, double theta);

// Perfect arcs shrinking to a non-degenerate vertex. Each s1 > 0 is an arclength offset;
// the partner s2 < 0 is started at -s1 - k'''/(5 k'') s1^2.
std::vector<VertexFamilyMember> vertex_family(const SupportCurve& curve, double vertex_theta,
                                              const std::vector<double>& s1_grid);

}  // namespace isoperim
