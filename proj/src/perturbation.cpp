#include "isoperim/perturbation.hpp"

#include <cmath>
#include <limits>

#include "isoperim/contour.hpp"
#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/profile.hpp"

namespace isoperim {

namespace {

constexpr double kRootEdge = 1e-6;  // b = 0 and b = pi/2 are degenerate arcs

double mode_coeff(const std::vector<double>& v, std::size_t k) { return k < v.size() ? v[k] : 0.0; }

template <class Fn>
double sum_modes(const PerturbationField& f, Fn&& term) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.max_mode(); ++k) {
    const double c = mode_coeff(f.fourier_cos, k), s = mode_coeff(f.fourier_sin, k);
    if (c != 0.0 || s != 0.0) acc += term(static_cast<double>(k + 1), c, s);
  }
  return acc;
}

double cot_half_range(double b) {
  if (!(b > 0.0 && b <= 0.5 * kPi)) {
    throw Error(ErrorKind::OutOfRange, "contact half-angle must lie in (0, pi/2]");
  }
  return std::tan(0.5 * kPi - b);
}

struct PowerFit {
  std::vector<double> coef;       // coefficients of s, s^2, ...
  std::vector<double> alpha_row;  // alpha = alpha_row . y
  std::vector<double> residual;
};

// Least squares y ~ sum_k p_k s^(k+1), solved on rescaled columns by Householder QR.
PowerFit fit_powers(const std::vector<double>& s, const std::vector<double>& y, std::size_t terms) {
  const std::size_t m = s.size();
  double smax = 0.0;
  for (double v : s) smax = std::max(smax, std::abs(v));
  // Columns of X, then the identity so that R^-1 Q^T can be read off for the alpha row.
  std::vector<std::vector<double>> x(terms, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
      p *= s[i] / smax;
      x[k][i] = p;
    }
  }
  std::vector<std::vector<double>> q(m, std::vector<double>(m, 0.0));  // rows of Q^T
  for (std::size_t i = 0; i < m; ++i) q[i][i] = 1.0;
  for (std::size_t k = 0; k < terms; ++k) {
    double nrm = 0.0;
    for (std::size_t i = k; i < m; ++i) nrm += x[k][i] * x[k][i];
    nrm = std::sqrt(nrm);
    if (nrm < 1e-13) throw Error(ErrorKind::FitIllConditioned, "profile fit is singular; widen the s grid");
    const double alpha = x[k][k] > 0.0 ? -nrm : nrm;
    std::vector<double> v(m, 0.0);
    v[k] = x[k][k] - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i] = x[k][i];
    double vv = 0.0;
    for (double t : v) vv += t * t;
    auto reflect = [&](std::vector<double>& col) {
      double dotv = 0.0;
      for (std::size_t i = k; i < m; ++i) dotv += v[i] * col[i];
      const double f = 2.0 * dotv / vv;
      for (std::size_t i = k; i < m; ++i) col[i] -= f * v[i];
    };
    for (std::size_t c = k; c < terms; ++c) reflect(x[c]);
    // Apply to the identity columns: q holds Q^T as rows, so reflect its columns.
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<double> col(m);
      for (std::size_t i = 0; i < m; ++i) col[i] = q[i][c];
      reflect(col);
      for (std::size_t i = 0; i < m; ++i) q[i][c] = col[i];
    }
  }
  // Back-substitution R B = (Q^T)_{0..terms-1}, B = pseudo-inverse on scaled columns.
  std::vector<std::vector<double>> pinv(terms, std::vector<double>(m));
  for (std::size_t kk = terms; kk-- > 0;) {
    for (std::size_t c = 0; c < m; ++c) {
      double acc = q[kk][c];
      for (std::size_t j = kk + 1; j < terms; ++j) acc -= x[j][kk] * pinv[j][c];
      pinv[kk][c] = acc / x[kk][kk];
    }
  }
  PowerFit fit;
  fit.coef.assign(terms, 0.0);
  double unscale = 1.0;
  for (std::size_t k = 0; k < terms; ++k) {
    unscale /= smax;
    for (std::size_t i = 0; i < m; ++i) fit.coef[k] += pinv[k][i] * y[i];
    fit.coef[k] *= unscale;
  }
  for (std::size_t i = 0; i < m; ++i) fit.alpha_row.push_back(pinv[0][i] / smax);
  for (std::size_t i = 0; i < m; ++i) {
    double model = 0.0, p = 1.0;
    for (std::size_t k = 0; k < terms; ++k) {
      p *= s[i];
      model += fit.coef[k] * p;
    }
    fit.residual.push_back(y[i] - model);
  }
  return fit;
}

}  // namespace

PerturbationField PerturbationField::cos_mode(int n, double amplitude) {
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "mode index must be at least 1");
  PerturbationField f;
  f.fourier_cos.assign(static_cast<std::size_t>(n), 0.0);
  f.fourier_cos.back() = amplitude;
  f.description = "cos " + std::to_string(n) + "u";
  return f;
}

PerturbationField PerturbationField::sin_mode(int n, double amplitude) {
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "mode index must be at least 1");
  PerturbationField f;
  f.fourier_sin.assign(static_cast<std::size_t>(n), 0.0);
  f.fourier_sin.back() = amplitude;
  f.description = "sin " + std::to_string(n) + "u";
  return f;
}

double PerturbationField::value(double u) const {
  return sum_modes(*this, [u](double n, double c, double s) {
    return c * std::cos(n * u) + s * std::sin(n * u);
  });
}

double PerturbationField::derivative(double u) const {
  return sum_modes(*this, [u](double n, double c, double s) {
    return n * (-c * std::sin(n * u) + s * std::cos(n * u));
  });
}

double PerturbationField::second_derivative(double u) const {
  return sum_modes(*this, [u](double n, double c, double s) {
    return -n * n * (c * std::cos(n * u) + s * std::sin(n * u));
  });
}

double PerturbationField::antiderivative(double u) const {
  return sum_modes(*this, [u](double n, double c, double s) {
    return (c * std::sin(n * u) - s * std::cos(n * u)) / n;
  });
}

double PerturbationField::energy() const {
  return sum_modes(*this, [](double, double c, double s) { return c * c + s * s; });
}

bool PerturbationField::is_zero() const { return energy() == 0.0; }

double first_variation_l(const PerturbationField& f, double b, double u) {
  const double cot_b = cot_half_range(b);
  const double v = u + 2.0 * b;
  return -cot_b * (f.antiderivative(v) - f.antiderivative(u)) + f.value(u) + f.value(v);
}

double mean_l(const PerturbationField& f, double b) {
  cot_half_range(b);
  // The trapezoid rule integrates trigonometric polynomials of degree < nodes exactly.
  const std::size_t nodes = 4 * f.max_mode() + 16;
  const double h = kTwoPi / static_cast<double>(nodes);
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) acc += first_variation_l(f, b, h * static_cast<double>(k));
  return acc * h;
}

std::pair<double, double> min_first_variation(const PerturbationField& f, double b) {
  const std::size_t nodes = 64 * (f.max_mode() + 1);
  const double h = kTwoPi / static_cast<double>(nodes);
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    const double v = first_variation_l(f, b, h * static_cast<double>(k));
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  const double u0 = h * static_cast<double>(best);
  const Extremum e = maximize([&](double u) { return -first_variation_l(f, b, u); }, u0 - h, u0 + h);
  if (-e.value < best_v) return {-e.value, wrap_2pi(e.x)};
  return {best_v, u0};
}

double mode_condition(int n, double b) {
  const double nn = static_cast<double>(n);
  return std::cos(b) * std::sin(nn * b) - nn * std::sin(b) * std::cos(nn * b);
}

std::vector<ModeRoot> find_mode_roots(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidSpec, "mode roots are defined for n >= 2");
  auto fn = [n](double b) { return mode_condition(n, b); };
  std::vector<ModeRoot> out;
  for (double b : scan_roots(fn, kRootEdge, 0.5 * kPi - kRootEdge, 10000, 1e-13)) {
    // Bisection leaves b within 1e-13; a bracketed polish takes it to rounding level.
    const double lo = b - 2e-13, hi = b + 2e-13;
    if ((fn(lo) > 0.0) != (fn(hi) > 0.0)) b = solve_bracketed(fn, lo, hi, 1e-17);
    out.push_back({n, b, b, disk::theta_to_area(b)});
  }
  return out;
}

double mode_surface(double x, double y) {
  return std::cos(y) * std::sin(x * y) - x * std::sin(y) * std::cos(x * y);
}

ImplicitCurve implicit_curve_sample(std::pair<double, double> x_range,
                                    std::pair<double, double> y_range, std::size_t resolution) {
  if (resolution < 2 || !(x_range.second > x_range.first) || !(y_range.second > y_range.first) ||
      !std::isfinite(x_range.first) || !std::isfinite(x_range.second) ||
      !std::isfinite(y_range.first) || !std::isfinite(y_range.second)) {
    throw Error(ErrorKind::InvalidSpec, "implicit curve needs finite, non-empty ranges");
  }
  ContourGrid g;
  g.x0 = x_range.first;
  g.nx = resolution + 1;
  g.dx = (x_range.second - x_range.first) / static_cast<double>(resolution);
  g.y0 = y_range.first;
  g.ny = resolution + 1;
  g.dy = (y_range.second - y_range.first) / static_cast<double>(resolution);
  const auto segments = marching_squares(sample_grid(mode_surface, g), g);
  return {chain_segments(segments)};
}

std::vector<double> implicit_slice_x(double n, std::pair<double, double> y_range, std::size_t nodes) {
  return scan_roots([n](double y) { return mode_surface(n, y); }, y_range.first, y_range.second,
                    nodes, 1e-13);
}

std::vector<double> implicit_slice_y(double n, std::pair<double, double> x_range, std::size_t nodes) {
  return scan_roots([n](double x) { return mode_surface(x, n); }, x_range.first, x_range.second,
                    nodes, 1e-13);
}

RadialCurve::RadialCurve(PerturbationField f, double s) : f_(std::move(f)), s_(s) {
  if (!std::isfinite(s)) throw Error(ErrorKind::InvalidSpec, "perturbation size must be finite");
  for (std::size_t k = 0; k < SupportCurve::kConvexityNodes; ++k) {
    const double u = kTwoPi * static_cast<double>(k) / SupportCurve::kConvexityNodes;
    const double r = 1.0 + s_ * f_.value(u);
    const double r1 = s_ * f_.derivative(u);
    const double r2 = s_ * f_.second_derivative(u);
    if (!(r > 0.0) || !(r * r + 2.0 * r1 * r1 - r * r2 > 0.0)) {
      throw Error(ErrorKind::NonConvexPerturbation, "perturbed boundary is not strictly convex");
    }
  }
  raw_area_ = kPi * (1.0 + 0.5 * s_ * s_ * f_.energy());
  lambda_ = std::sqrt(kPi / raw_area_);
  build_support_samples(1024);
  const double swept = sweep_area(0.0, kTwoPi, Vec2{});
  if (!(std::abs(swept - kPi) <= 1e-11 * kPi)) {
    throw Error(ErrorKind::AreaNormalizationFailure, "rescaled area differs from pi");
  }
}

double RadialCurve::radius(double u) const { return lambda_ * (1.0 + s_ * f_.value(u)); }

BoundaryFrame RadialCurve::frame(double u) const {
  const double r = radius(u);
  const double r1 = lambda_ * s_ * f_.derivative(u);
  const double r2 = lambda_ * s_ * f_.second_derivative(u);
  const Vec2 e = unit_from_angle(u);
  const Vec2 ep = perp(e);
  const double speed = std::hypot(r, r1);
  BoundaryFrame fr;
  fr.position = r * e;
  fr.tangent = (r1 * e + r * ep) / speed;
  fr.normal = Vec2{fr.tangent.y, -fr.tangent.x};
  fr.speed = speed;
  fr.curvature = (r * r + 2.0 * r1 * r1 - r * r2) / (speed * speed * speed);
  fr.normal_angle = u - std::atan(r1 / r);
  return fr;
}

double RadialCurve::param_of_normal_angle(double angle) const {
  // u - atan(r'/r) is increasing and stays within pi/2 of u.
  auto fn = [&](double u) { return u - std::atan(lambda_ * s_ * f_.derivative(u) / radius(u)) - angle; };
  return solve_bracketed(fn, angle - 0.5 * kPi, angle + 0.5 * kPi, 1e-15);
}

RadialCurve build_perturbed_domain(const PerturbationField& f, double s) { return RadialCurve(f, s); }

double aggregate_second_variation(const PerturbationField& f) { return -2.0 * kPi * f.energy(); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::FirstOrderDecrease:
      return "first_order_decrease";
    case Verdict::SecondOrderDecrease:
      return "second_order_decrease";
    case Verdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

ExperimentReport profile_decrease_experiment(const PerturbationField& f, double area,
                                             const std::vector<double>& s_grid,
                                             const ExperimentOptions& opt) {
  if (!(area > 0.0 && area < kPi)) throw Error(ErrorKind::OutOfRange, "area must lie in (0, pi)");
  if (f.is_zero()) throw Error(ErrorKind::InvalidSpec, "perturbation field is zero");
  std::vector<double> s_sorted(s_grid);
  std::sort(s_sorted.begin(), s_sorted.end());
  s_sorted.erase(std::unique(s_sorted.begin(), s_sorted.end()), s_sorted.end());
  if (s_sorted.size() < 3 || !(s_sorted.front() > 0.0)) {
    throw Error(ErrorKind::FitIllConditioned, "need at least three distinct positive s values");
  }

  ExperimentReport rep;
  rep.area = area;
  rep.s_values = s_sorted;
  const double b = disk::area_to_theta(area <= 0.5 * kPi ? area : kPi - area);
  rep.predicted_alpha = min_first_variation(f, b).first;

  auto profile_at = [&](double s, std::size_t grid) {
    try {
      const RadialCurve dom = build_perturbed_domain(f, s);
      return ProfileOracle(dom, grid, opt.threads).length_at(area);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NonConvexPerturbation ||
          e.kind() == ErrorKind::AreaNormalizationFailure) {
        throw;
      }
      throw Error(ErrorKind::OracleFailure, std::string("oracle failed: ") + e.what());
    }
  };

  rep.profile_at_zero = profile_at(0.0, opt.oracle_grid);
  if (std::abs(rep.profile_at_zero - disk::profile_I(area)) > 1e3 * opt.min_oracle_tol) {
    throw Error(ErrorKind::OracleFailure, "oracle disagrees with the disk profile at s = 0");
  }
  // The finer run is kept; the coarse one only measures how far the value can still move.
  const std::size_t fine_grid = opt.oracle_grid + opt.oracle_grid / 2;
  std::vector<double> dy;
  for (double s : s_sorted) {
    const double coarse = profile_at(s, opt.oracle_grid);
    const double fine = profile_at(s, fine_grid);
    rep.profile_values.push_back(fine);
    rep.oracle_tolerances.push_back(std::max(opt.min_oracle_tol, std::abs(fine - coarse)));
    dy.push_back(fine - rep.profile_at_zero);
  }

  const PowerFit quad = fit_powers(s_sorted, dy, 2);
  rep.alpha_quadratic = quad.coef[0];
  rep.beta_quadratic = quad.coef[1];

  // Raise the degree until the residuals are at the oracle's own noise level; one degree of
  // freedom is always left over so that the residual test means something.
  PowerFit chosen = quad;
  rep.fit_degree = 2;
  for (std::size_t deg = 2; deg + 1 <= s_sorted.size(); ++deg) {
    PowerFit fit = deg == 2 ? quad : fit_powers(s_sorted, dy, deg);
    chosen = fit;
    rep.fit_degree = deg;
    bool within = true;
    for (std::size_t i = 0; i < dy.size(); ++i) {
      within = within && std::abs(fit.residual[i]) <= 10.0 * rep.oracle_tolerances[i];
    }
    if (within) {
      rep.fit_resolved = true;
      break;
    }
  }
  rep.alpha = chosen.coef[0];
  rep.beta = chosen.coef[1];
  double var = 0.0;
  for (std::size_t i = 0; i < dy.size(); ++i) {
    const double w = chosen.alpha_row[i] * 10.0 * rep.oracle_tolerances[i];
    var += w * w;
  }
  rep.noise_floor = std::sqrt(var);

  if (rep.alpha < -rep.noise_floor) {
    rep.verdict = Verdict::FirstOrderDecrease;
  } else if (std::abs(rep.alpha) <= rep.noise_floor && rep.beta < 0.0) {
    rep.verdict = Verdict::SecondOrderDecrease;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace isoperim
