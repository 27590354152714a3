#include "isoperim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"

namespace isoperim {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDegenerateVertexTol = 1e-8;
constexpr double kVertexTol = 1e-12;

void require_convex(const SupportCurve& c) {
  if (!c.is_convex()) {
    throw Error(ErrorKind::NonConvex, "h + h'' is not positive everywhere");
  }
}

}  // namespace

// --- Boundary ---------------------------------------------------------------

double Boundary::sweep_area(double t0, double t1, Vec2 origin) const {
  return 0.5 * integrate(
                   [&](double t) {
                     const BoundaryFrame f = frame(t);
                     return cross(f.position - origin, f.tangent) * f.speed;
                   },
                   t0, t1);
}

double Boundary::arclength(double t0, double t1) const {
  return integrate([&](double t) { return frame(t).speed; }, t0, t1);
}

Vec2 Boundary::chord(double t1, double t2) const { return position(t1) - position(t2); }

double Boundary::chord_along_bisector(double t1, double t2) const {
  const double phi1 = frame(t1).normal_angle;
  const double phi2 = frame(t2).normal_angle;
  const double mid = phi1 + 0.5 * wrap_2pi(phi2 - phi1);
  return dot(chord(t1, t2), unit_from_angle(mid));
}

bool Boundary::contains(Vec2 p, double tol) const {
  for (const auto& f : support_samples_) {
    if (dot(p - f.position, f.normal) > tol) return false;
  }
  return true;
}

void Boundary::build_support_samples(std::size_t n) {
  support_samples_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    support_samples_[k] = frame(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
}

// --- SupportCurve -----------------------------------------------------------

SupportCurve::SupportCurve(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  if (cos_coeffs.empty()) {
    throw Error(ErrorKind::InvalidSpec, "support function needs at least the constant term");
  }
  for (double v : cos_coeffs) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidSpec, "non-finite support coefficient");
  }
  for (double v : sin_coeffs) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidSpec, "non-finite support coefficient");
  }
  const std::size_t modes = std::max(cos_coeffs.size() - 1, sin_coeffs.size());
  cos_ = std::move(cos_coeffs);
  cos_.resize(modes + 1, 0.0);
  sin_.assign(modes + 1, 0.0);
  std::copy(sin_coeffs.begin(), sin_coeffs.end(), sin_.begin() + 1);

  min_rho_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kConvexityNodes; ++k) {
    const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(kConvexityNodes);
    min_rho_ = std::min(min_rho_, radius_of_curvature(th).rho);
  }
  convex_ = min_rho_ > 0.0;
  if (convex_) build_support_samples(1024);
}

SupportCurve SupportCurve::disk(double radius) { return SupportCurve({radius}); }

SupportCurve SupportCurve::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "ellipse semi-axes must be positive");
  }
  // h(theta) = sqrt(c + d cos 2 theta) with c = (a^2 + b^2)/2, d = (a^2 - b^2)/2. Its
  // branch points sit at Im(2 theta) = +-acosh(c/|d|), so a_m decays like
  // exp(-(m/2) acosh(c/|d|)); modes past the 1e-17 level are dropped rather than filled
  // with DFT rounding noise, which rho = h + h'' would amplify by m^2.
  const double c = 0.5 * (a * a + b * b);
  const double d = 0.5 * (a * a - b * b);
  if (std::abs(d) <= 1e-15 * c) return SupportCurve::disk(std::sqrt(c));
  const double rate = std::acosh(c / std::abs(d));
  constexpr std::size_t kNodes = 16384;
  const std::size_t max_mode =
      std::min<std::size_t>(kNodes / 4, 2 * static_cast<std::size_t>(std::ceil(40.0 / rate)) + 8);
  // Angles in long double: a double 2pi puts a phase error growing with the node index into
  // the cosine table, which biases every coefficient the same way.
  constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
  std::vector<long double> samples(kNodes), table(kNodes);
  for (std::size_t j = 0; j < kNodes; ++j) {
    const long double th = kTwoPiL * static_cast<long double>(j) / static_cast<long double>(kNodes);
    samples[j] = std::sqrt(static_cast<long double>(c) + static_cast<long double>(d) * std::cos(2.0L * th));
    table[j] = std::cos(th);
  }
  std::vector<double> coeffs(max_mode + 1, 0.0);
  for (std::size_t m = 0; m <= max_mode; m += 2) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < kNodes; ++j) acc += samples[j] * table[(m * j) % kNodes];
    coeffs[m] = static_cast<double>(acc * (m == 0 ? 1.0L : 2.0L) / static_cast<long double>(kNodes));
  }
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-18 * coeffs[0]) coeffs.pop_back();
  return SupportCurve(std::move(coeffs));
}

SupportCurve::Jet SupportCurve::support(double theta) const {
  Jet j{cos_[0], 0.0, 0.0, 0.0};
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double c = 1.0, s = 0.0;
  for (std::size_t m = 1; m < cos_.size(); ++m) {
    const double cn = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = cn;
    const double mm = static_cast<double>(m);
    const double even = cos_[m] * c + sin_[m] * s;
    const double odd = -cos_[m] * s + sin_[m] * c;
    j.h += even;
    j.dh += mm * odd;
    j.d2h -= mm * mm * even;
    j.d3h -= mm * mm * mm * odd;
  }
  return j;
}

SupportCurve::RadiusJet SupportCurve::radius_of_curvature(double theta) const {
  RadiusJet r{cos_[0], 0.0, 0.0, 0.0};
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double c = 1.0, s = 0.0;
  for (std::size_t m = 1; m < cos_.size(); ++m) {
    const double cn = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = cn;
    const double mm = static_cast<double>(m);
    const double w = 1.0 - mm * mm;
    const double even = cos_[m] * c + sin_[m] * s;
    const double odd = -cos_[m] * s + sin_[m] * c;
    r.rho += w * even;
    r.drho += w * mm * odd;
    r.d2rho -= w * mm * mm * even;
    r.d3rho -= w * mm * mm * mm * odd;
  }
  return r;
}

double SupportCurve::arclength_from_zero(double theta) const {
  double s = cos_[0] * theta;
  for (std::size_t m = 1; m < cos_.size(); ++m) {
    const double mm = static_cast<double>(m);
    const double w = (1.0 - mm * mm) / mm;
    s += w * (cos_[m] * std::sin(mm * theta) + sin_[m] * (1.0 - std::cos(mm * theta)));
  }
  return s;
}

double SupportCurve::theta_at_arclength(double s) const {
  require_convex(*this);
  const double period = kTwoPi * cos_[0];
  const double turns = std::floor(s / period);
  const double target = s - turns * period;
  auto g = [&](double th) { return arclength_from_zero(th) - target; };
  double th = solve_bracketed(g, 0.0, kTwoPi, 1e-15);
  return th + turns * kTwoPi;
}

SupportCurve SupportCurve::rotated(double angle) const {
  std::vector<double> a(cos_.size()), b(sin_.size() - 1);
  a[0] = cos_[0];
  for (std::size_t m = 1; m < cos_.size(); ++m) {
    const double ma = static_cast<double>(m) * angle;
    a[m] = cos_[m] * std::cos(ma) - sin_[m] * std::sin(ma);
    b[m - 1] = cos_[m] * std::sin(ma) + sin_[m] * std::cos(ma);
  }
  return SupportCurve(std::move(a), std::move(b));
}

SupportCurve SupportCurve::scaled(double factor) const {
  std::vector<double> a = cos_;
  std::vector<double> b(sin_.begin() + 1, sin_.end());
  for (double& v : a) v *= factor;
  for (double& v : b) v *= factor;
  return SupportCurve(std::move(a), std::move(b));
}

BoundaryFrame SupportCurve::frame(double theta) const {
  const Jet j = support(theta);
  const double rho = j.h + j.d2h;
  BoundaryFrame f;
  f.normal = unit_from_angle(theta);
  f.tangent = perp(f.normal);
  f.position = j.h * f.normal + j.dh * f.tangent;
  f.speed = rho;
  f.curvature = 1.0 / rho;
  f.normal_angle = theta;
  return f;
}

namespace {
constexpr double kShortChord = 0.5;
}

Vec2 SupportCurve::chord(double t1, double t2) const {
  const double d = wrap_pi(t1 - t2);
  if (std::abs(d) > kShortChord) return Boundary::chord(t1, t2);
  const double x = integrate(
      [&](double th) { return -radius_of_curvature(th).rho * std::sin(th); }, t2, t2 + d);
  const double y = integrate([&](double th) { return radius_of_curvature(th).rho * std::cos(th); },
                             t2, t2 + d);
  return {x, y};
}

double SupportCurve::chord_along_bisector(double t1, double t2) const {
  // With theta = c + u over the shorter path and T . e(mid) = sin(mid - theta), only the odd
  // part of rho about c survives:
  //   g = sigma sum_{m>=2} (b_m cos mc - a_m sin mc) ((m-1) S((m+1) delta) - (m+1) S((m-1) delta))
  // where S(x) = x - sin x. No two nearby points are subtracted, so g keeps its relative
  // accuracy even when it is O(delta^4) next to a vertex.
  const double d = wrap_pi(t1 - t2);
  const double delta = 0.5 * d;
  const double c = t2 + delta;
  const double mid = t1 + 0.5 * wrap_2pi(t2 - t1);
  const double sigma = std::cos(mid - c) > 0.0 ? 1.0 : -1.0;
  const auto s_minus = [](double x) {
    if (std::abs(x) > 0.6) return x - std::sin(x);
    const double x2 = x * x;
    double acc = 1.0;
    for (double den : {272.0, 210.0, 156.0, 110.0, 72.0, 42.0, 20.0}) acc = 1.0 - x2 / den * acc;
    return x * x2 / 6.0 * acc;
  };
  const double c1 = std::cos(c), s1 = std::sin(c);
  double cm = c1, sm = s1;  // cos(mc), sin(mc) at m = 1
  double sum = 0.0;
  for (std::size_t m = 2; m < cos_.size(); ++m) {
    const double cn = cm * c1 - sm * s1;
    sm = sm * c1 + cm * s1;
    cm = cn;
    const double mm = static_cast<double>(m);
    const double odd = sin_[m] * cm - cos_[m] * sm;
    if (odd == 0.0) continue;
    sum += odd * ((mm - 1.0) * s_minus((mm + 1.0) * delta) - (mm + 1.0) * s_minus((mm - 1.0) * delta));
  }
  return sigma * sum;
}

double SupportCurve::area() const {
  double acc = cos_[0] * cos_[0];
  for (std::size_t m = 1; m < cos_.size(); ++m) {
    const double mm = static_cast<double>(m);
    acc += 0.5 * (1.0 - mm * mm) * (cos_[m] * cos_[m] + sin_[m] * sin_[m]);
  }
  return kPi * acc;
}

// --- free operations --------------------------------------------------------

CurvePoint eval(const SupportCurve& curve, double theta) {
  const BoundaryFrame f = curve.frame(theta);
  if (!(f.speed > 0.0)) {
    throw Error(ErrorKind::NonConvex, "h + h'' <= 0 at theta = " + std::to_string(theta));
  }
  return {theta, f.position, f.tangent, f.normal, f.curvature};
}

double area(const SupportCurve& curve) {
  require_convex(curve);
  return curve.area();
}

double perimeter(const SupportCurve& curve) {
  require_convex(curve);
  return kTwoPi * curve.cos_coeffs()[0];
}

SupportCurve normalize_area(const SupportCurve& curve, double target) {
  if (!(target > 0.0)) throw Error(ErrorKind::OutOfRange, "target area must be positive");
  return curve.scaled(std::sqrt(target / area(curve)));
}

DomainClassReport classify(const SupportCurve& curve) {
  require_convex(curve);
  DomainClassReport rep;
  rep.area = curve.area();
  rep.perimeter = perimeter(curve);

  constexpr std::size_t kNodes = SupportCurve::kConvexityNodes;
  double rho_lo = std::numeric_limits<double>::infinity();
  double rho_hi = -rho_lo;
  double theta_rho_lo = 0.0;
  for (std::size_t k = 0; k < kNodes; ++k) {
    const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(kNodes);
    const double rho = curve.radius_of_curvature(th).rho;
    if (rho < rho_lo) {
      rho_lo = rho;
      theta_rho_lo = th;
    }
    rho_hi = std::max(rho_hi, rho);
  }

  const auto& a = curve.cos_coeffs();
  const auto& b = curve.sin_coeffs();
  bool symmetric = true;
  for (std::size_t m = 1; m < a.size(); ++m) {
    if (std::abs(b[m]) >= kSymmetryTol) symmetric = false;
    if (m % 2 == 1 && std::abs(a[m]) >= kSymmetryTol) symmetric = false;
  }
  rep.symmetric_both_axes = symmetric;

  if (rho_hi - rho_lo <= 1e-12 * rho_hi) {
    // Circle (possibly translated): every point is critical for the curvature.
    rep.is_disk = true;
    rep.kappa_max = rep.kappa_min = 1.0 / rho_lo;
    rep.pestov_ionin_holds = rep.kappa_max >= std::sqrt(kPi / rep.area) * (1.0 - 1e-12);
    return rep;
  }

  // Vertices: zeros of kappa' = -rho'/rho^2, i.e. zeros of rho'.
  auto drho = [&](double th) { return curve.radius_of_curvature(th).drho; };
  std::vector<double> roots = scan_roots(drho, 0.0, kTwoPi, kNodes + 1, kVertexTol);
  std::vector<double> vertices;
  for (double r : roots) {
    const double w = wrap_2pi(r);
    const bool dup = std::any_of(vertices.begin(), vertices.end(), [&](double v) {
      return std::abs(wrap_pi(v - w)) < 1e-9;
    });
    if (!dup) vertices.push_back(w);
  }
  std::sort(vertices.begin(), vertices.end());

  double kmax = 1.0 / rho_lo, kmin = 1.0 / rho_hi;
  rep.theta_kappa_max = theta_rho_lo;
  for (double v : vertices) {
    const auto r = curve.radius_of_curvature(v);
    const double kappa = 1.0 / r.rho;
    // kappa'' = -rho''/rho^2 at a critical point of rho.
    if (std::abs(r.d2rho / (r.rho * r.rho)) < kDegenerateVertexTol) rep.has_degenerate_vertex = true;
    if (kappa > kmax) {
      kmax = kappa;
      rep.theta_kappa_max = v;
    }
    kmin = std::min(kmin, kappa);
  }
  rep.vertex_thetas = vertices;
  rep.kappa_max = kmax;
  rep.kappa_min = kmin;
  rep.pestov_ionin_holds = kmax >= std::sqrt(kPi / rep.area) * (1.0 - 1e-12);

  bool axis_vertices = vertices.size() == 4;
  if (axis_vertices) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (std::abs(wrap_pi(vertices[k] - 0.5 * kPi * static_cast<double>(k))) > 1e-9) {
        axis_vertices = false;
      }
    }
  }
  rep.is_class_A = symmetric && axis_vertices && !rep.has_degenerate_vertex;
  return rep;
}

SupportCurve orient_major_axis_x(const SupportCurve& curve) {
  if (curve.radius_of_curvature(0.0).rho > curve.radius_of_curvature(0.5 * kPi).rho) {
    return curve.rotated(0.5 * kPi);
  }
  return curve;
}

}  // namespace isoperim
