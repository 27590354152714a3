#include "isoperim/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"

namespace isoperim {

namespace {

constexpr double kSegmentTol = 1e-8;  // |N1 + N2| below this means "straight"

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

// Area between a chord of length c and a circular arc turning by phi, signed like phi.
double circular_segment_area(double c, double phi) {
  const double half = 0.5 * phi;
  double num;
  if (std::abs(phi) < 1e-2) {
    const double p2 = phi * phi;
    num = phi * p2 * (1.0 / 6.0 - p2 * (1.0 / 120.0 - p2 * (1.0 / 5040.0 - p2 / 362880.0)));
  } else {
    num = phi - std::sin(phi);
  }
  const double s = std::sin(half);
  if (s == 0.0) return 0.0;
  return c * c * num / (8.0 * s * s);
}

double domain_scale(const Boundary& domain) { return std::sqrt(domain.area()); }

bool curvature_is_constant(const Boundary& domain) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int k = 0; k < 64; ++k) {
    const double kappa = domain.frame(kTwoPi * k / 64.0).curvature;
    lo = std::min(lo, kappa);
    hi = std::max(hi, kappa);
  }
  return hi - lo <= 1e-12 * hi;
}

}  // namespace

Vec2 PerfectArc::point_at(double x) const {
  const double sigma = x * length;
  const double ks = curvature * sigma;
  const double half = 0.5 * ks;
  const double sh = sinc(half);
  const Vec2 d = sigma * (sinc(ks) * start_tangent + (half * sh * sh) * perp(start_tangent));
  return start + d;
}

Vec2 PerfectArc::tangent_at(double x) const { return rotate(start_tangent, curvature * x * length); }

double normalized_two_point(const Boundary& domain, double t1, double t2) {
  return domain.chord_along_bisector(t1, t2);
}

std::pair<double, double> normalized_two_point_grad(const Boundary& domain, double t1, double t2) {
  const BoundaryFrame f1 = domain.frame(t1);
  const BoundaryFrame f2 = domain.frame(t2);
  const Vec2 c = domain.chord(t1, t2);
  const Vec2 m = unit_from_angle(f1.normal_angle + 0.5 * wrap_2pi(f2.normal_angle - f1.normal_angle));
  const Vec2 pm = perp(m);
  return {f1.speed * (dot(f1.tangent, m) + 0.5 * f1.curvature * dot(c, pm)),
          f2.speed * (-dot(f2.tangent, m) + 0.5 * f2.curvature * dot(c, pm))};
}

double two_point_f(const Boundary& domain, double s1, double s2) {
  if (std::abs(wrap_pi(s1 - s2)) < 1e-14) {
    throw Error(ErrorKind::CoincidentPoints, "two-point function needs distinct points");
  }
  const double dphi = wrap_2pi(domain.frame(s2).normal_angle - domain.frame(s1).normal_angle);
  return 2.0 * std::cos(0.5 * dphi) * domain.chord_along_bisector(s1, s2);
}

std::pair<double, double> two_point_grad(const Boundary& domain, double s1, double s2) {
  if (std::abs(wrap_pi(s1 - s2)) < 1e-14) {
    throw Error(ErrorKind::CoincidentPoints, "two-point gradient needs distinct points");
  }
  const BoundaryFrame f1 = domain.frame(s1);
  const BoundaryFrame f2 = domain.frame(s2);
  const Vec2 c = domain.chord(s1, s2);
  return {dot(f1.tangent, f2.normal) + f1.curvature * dot(c, f1.tangent),
          -dot(f2.tangent, f1.normal) + f2.curvature * dot(c, f2.tangent)};
}

TwoPointState two_point_state(const Boundary& domain, double s1, double s2) {
  return {s1, s2, two_point_f(domain, s1, s2), two_point_grad(domain, s1, s2)};
}

double degeneracy_residual(const Boundary& domain, double s1, double s2) {
  const BoundaryFrame f1 = domain.frame(s1);
  const BoundaryFrame f2 = domain.frame(s2);
  const Vec2 c = domain.chord(s1, s2);
  const Vec2 dn = f1.normal - f2.normal;
  return std::max(norm(f1.curvature * c - dn), norm(f2.curvature * c - dn));
}

PerfectArc build_arc_oriented(const Boundary& domain, double t_from, double t_to,
                              const ArcOptions& opt) {
  const double scale = domain_scale(domain);
  const BoundaryFrame ff = domain.frame(t_from);
  const BoundaryFrame ft = domain.frame(t_to);
  const Vec2 c = domain.chord(t_from, t_to);  // end - start
  const double clen = norm(c);
  if (std::abs(wrap_pi(t_from - t_to)) < 1e-14 || clen < 1e-14 * scale) {
    throw Error(ErrorKind::CoincidentPoints, "arc endpoints coincide");
  }

  PerfectArc arc;
  arc.endpoint_thetas = {t_from, t_to};
  arc.start = ft.position;
  arc.end = ff.position;
  arc.start_tangent = -ft.normal;

  const bool straight = norm(ff.normal + ft.normal) < kSegmentTol;
  double phi = 0.0;
  if (straight) {
    const Vec2 dir = c / clen;
    const bool aligned = std::abs(cross(dir, arc.start_tangent)) <= opt.perfect_tol &&
                         dot(dir, arc.start_tangent) > 0.0;
    if (!aligned && opt.require_perfect) {
      throw Error(ErrorKind::NormalsParallelButNotAligned,
                  "opposite normals but the chord is not along them");
    }
    arc.kind = ArcKind::Segment;
    arc.length = clen;
    arc.curvature = 0.0;
    arc.radius = 0.0;
  } else {
    phi = 2.0 * signed_angle(arc.start_tangent, c);
    arc.kind = ArcKind::Circular;
    arc.length = clen / sinc(0.5 * phi);
    arc.curvature = phi / arc.length;
    arc.radius = 1.0 / std::abs(arc.curvature);
    arc.center = arc.start + perp(arc.start_tangent) / arc.curvature;
  }
  arc.turning_angle = phi;

  const Vec2 end_tangent = rotate(arc.start_tangent, phi);
  arc.orthogonality_residual = std::abs(dot(end_tangent, ff.tangent));
  if (dot(end_tangent, ff.normal) <= 0.0) arc.orthogonality_residual += 1.0;
  if (opt.require_perfect && arc.orthogonality_residual > opt.perfect_tol) {
    throw Error(ErrorKind::NotPerfect, "arc is not orthogonal to the boundary at both ends");
  }

  const double t_end = t_from + wrap_2pi(t_to - t_from);
  const Vec2 origin = arc.start + 0.5 * c;
  arc.enclosed_area = domain.sweep_area(t_from, t_end, origin) + circular_segment_area(clen, phi);

  if (opt.test_containment) {
    arc.contained = true;
    const std::size_t n = std::max<std::size_t>(opt.containment_samples, 1);
    for (std::size_t i = 0; i < n && arc.contained; ++i) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      arc.contained = domain.contains(arc.point_at(x), 1e-10 * scale);
    }
  }
  return arc;
}

PerfectArc build_arc(const Boundary& domain, double s1, double s2, const ArcOptions& opt) {
  double a = wrap_pi(s1), b = wrap_pi(s2);
  if (a > b) std::swap(a, b);
  return build_arc_oriented(domain, a, b, opt);
}

namespace {

// Closed-form arc family of a circle, mirrored about the seed's bisector.
std::vector<PerfectArc> circle_family(const Boundary& domain, const TwoPointState& seed,
                                      std::size_t steps, double ds) {
  const BoundaryFrame f1 = domain.frame(seed.s1);
  const BoundaryFrame f2 = domain.frame(seed.s2);
  const double radius = 1.0 / f1.curvature;
  const Vec2 centre = f1.position - radius * f1.normal;
  const double u = f1.normal_angle + 0.5 * wrap_pi(f2.normal_angle - f1.normal_angle);

  std::vector<PerfectArc> out;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double phi1 = f1.normal_angle + ds * static_cast<double>(i);
    const double half = std::abs(wrap_pi(phi1 - u));
    if (!(half > 0.0) || !(half < 0.5 * kPi)) break;
    PerfectArc a = disk::disk_arc(u, half);
    a.center = centre + radius * a.center;
    a.start = centre + radius * a.start;
    a.end = centre + radius * a.end;
    a.radius *= radius;
    a.curvature /= radius;
    a.length *= radius;
    a.enclosed_area *= radius * radius;
    a.endpoint_thetas = {domain.param_of_normal_angle(a.endpoint_thetas.first),
                         domain.param_of_normal_angle(a.endpoint_thetas.second)};
    out.push_back(a);
  }
  return out;
}

// Zero of g(t1, .) near `guess`: Newton first, then a sign-change scan of +-window.
bool correct_partner(const Boundary& domain, double t1, double guess, double window, double tol,
                     int max_newton, double& t2) {
  auto g = [&](double x) { return normalized_two_point(domain, t1, x); };
  double x = guess;
  for (int it = 0; it < max_newton; ++it) {
    const double gx = g(x);
    if (std::abs(gx) <= tol) {
      t2 = x;
      return std::abs(x - guess) <= window;
    }
    const double dg = normalized_two_point_grad(domain, t1, x).second;
    if (dg == 0.0 || !std::isfinite(dg)) break;
    x -= gx / dg;
  }
  constexpr int kCells = 20;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  const double h = 2.0 * window / kCells;
  double a = guess - window, ga = g(a);
  for (int k = 1; k <= kCells; ++k) {
    const double b = guess - window + h * k;
    const double gb = g(b);
    if ((ga > 0.0) != (gb > 0.0) || gb == 0.0) {
      const double r = solve_bracketed(g, a, b, 1e-15);
      if (std::abs(r - guess) < std::abs(best - guess)) best = r;
      found = true;
    }
    a = b;
    ga = gb;
  }
  if (found) t2 = best;
  return found;
}

}  // namespace

std::vector<PerfectArc> continue_family(const Boundary& domain, const TwoPointState& seed,
                                        std::size_t steps, double ds,
                                        const ContinuationOptions& opt) {
  const double scale = domain_scale(domain);
  const auto grad = two_point_grad(domain, seed.s1, seed.s2);
  const double f_seed = two_point_f(domain, seed.s1, seed.s2);
  if (std::abs(grad.first) + std::abs(grad.second) < 1e-10 && std::abs(f_seed) < 1e-12 * scale) {
    if (curvature_is_constant(domain)) return circle_family(domain, seed, steps, ds);
    throw Error(ErrorKind::DegenerateGradient, "both partial derivatives vanish at the seed");
  }

  const double tol = opt.f_tol * scale;
  double t1 = seed.s1, t2 = seed.s2;
  if (std::abs(normalized_two_point(domain, t1, t2)) > 1e3 * tol) {
    throw Error(ErrorKind::NotPerfect, "seed is not a perfect pair");
  }

  std::vector<PerfectArc> out;
  out.push_back(build_arc(domain, t1, t2, opt.arc));
  for (std::size_t i = 0; i < steps; ++i) {
    const auto [g1, g2] = normalized_two_point_grad(domain, t1, t2);
    if (std::hypot(g1, g2) < 1e-10 * scale) break;  // degenerate point of the family
    const double slope = g2 != 0.0 ? -g1 / g2 : 0.0;
    const double next1 = t1 + ds;
    const double guess = t2 + slope * ds;
    double next2 = guess;
    if (!correct_partner(domain, next1, guess, 5.0 * std::abs(ds), tol, opt.max_newton, next2)) {
      if (out.size() == 1) {
        throw Error(ErrorKind::NoConvergence, "corrector failed on the first continuation step");
      }
      break;
    }
    if (std::abs(wrap_pi(next1 - next2)) < 1e-9) break;
    PerfectArc arc;
    try {
      arc = build_arc(domain, next1, next2, opt.arc);
    } catch (const Error&) {
      break;
    }
    if (opt.arc.test_containment && !arc.contained) break;
    out.push_back(arc);
    t1 = next1;
    t2 = next2;
  }
  return out;
}

CurvatureJet curvature_jet(const SupportCurve& curve, double theta) {
  const auto r = curve.radius_of_curvature(theta);
  const double rho = r.rho, r1 = r.drho, r2 = r.d2rho, r3 = r.d3rho;
  const double k = 1.0 / rho;
  const double kt = -r1 / (rho * rho);
  const double ktt = -r2 / (rho * rho) + 2.0 * r1 * r1 / (rho * rho * rho);
  const double kttt = -r3 / (rho * rho) + 6.0 * r1 * r2 / (rho * rho * rho) -
                      6.0 * r1 * r1 * r1 / (rho * rho * rho * rho);
  // d/ds = k d/dtheta
  return {k, k * kt, k * (kt * kt + k * ktt), k * (kt * kt * kt + 4.0 * k * kt * ktt + k * k * kttt)};
}

std::vector<VertexFamilyMember> vertex_family(const SupportCurve& curve, double vertex_theta,
                                              const std::vector<double>& s1_grid) {
  if (!curve.is_convex()) throw Error(ErrorKind::NonConvex, "vertex family needs a convex curve");
  const CurvatureJet jet = curvature_jet(curve, vertex_theta);
  if (std::abs(jet.dk) > 1e-9 * jet.k * jet.k) {
    throw Error(ErrorKind::NotAVertex, "curvature derivative does not vanish");
  }
  if (std::abs(jet.d2k) < 1e-8) {
    throw Error(ErrorKind::DegenerateVertex, "second curvature derivative vanishes");
  }
  const double a2 = -jet.d3k / (5.0 * jet.d2k);
  const double sv = curve.arclength_from_zero(vertex_theta);
  std::vector<VertexFamilyMember> out;
  out.reserve(s1_grid.size());
  for (double s1 : s1_grid) {
    if (!(s1 > 0.0)) throw Error(ErrorKind::OutOfRange, "vertex-family offsets must be positive");
    const double t1 = curve.theta_at_arclength(sv + s1);
    const double guess = curve.theta_at_arclength(sv - s1 + a2 * s1 * s1);
    const double window = 0.5 * (t1 - vertex_theta);
    double t2 = guess;
    // g is O(s1^4) near the vertex, so an absolute residual test would accept the guess
    // itself; go straight to bracketing.
    if (!correct_partner(curve, t1, guess, window, 0.0, 0, t2) || !(t2 < vertex_theta)) {
      throw Error(ErrorKind::NoConvergence, "no partner point for vertex-family offset");
    }
    VertexFamilyMember m;
    m.s1 = s1;
    m.s2 = curve.arclength_from_zero(t2) - sv;
    m.arc = build_arc_oriented(curve, t2, t1);
    out.push_back(m);
  }
  return out;
}

}  // namespace isoperim
