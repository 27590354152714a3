#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "isoperim/geometry.hpp"
#include "isoperim/numerics.hpp"
#include "isoperim/vec2.hpp"

namespace isoperim {

// Zero-mean boundary field f(u) = sum_{n>=1} (c_n cos nu + s_n sin nu); entry k of each list
// is mode n = k + 1.
struct PerturbationField {
  std::vector<double> fourier_cos;
  std::vector<double> fourier_sin;
  std::string description;

  static PerturbationField cos_mode(int n, double amplitude = 1.0);
  static PerturbationField sin_mode(int n, double amplitude = 1.0);

  std::size_t max_mode() const { return std::max(fourier_cos.size(), fourier_sin.size()); }
  double value(double u) const;
  double derivative(double u) const;
  double second_derivative(double u) const;
  // Zero-mean antiderivative.
  double antiderivative(double u) const;
  // sum of c_n^2 + s_n^2
  double energy() const;
  bool is_zero() const;
};

// l(u) = -cot(b) int_u^{u+2b} f + f(u) + f(u + 2b), for b in (0, pi/2].
double first_variation_l(const PerturbationField& f, double b, double u);

// int_0^{2pi} l(u) du, by a trapezoid rule that is exact for the field's bandwidth.
double mean_l(const PerturbationField& f, double b);

// (min_u l, argmin) over a fine grid polished by Brent's method.
std::pair<double, double> min_first_variation(const PerturbationField& f, double b);

// cos(b) sin(nb) - n sin(b) cos(nb)
double mode_condition(int n, double b);

struct ModeRoot {
  int n = 0;
  double b = 0.0;
  double theta = 0.0;
  double area = 0.0;
};

std::vector<ModeRoot> find_mode_roots(int n);

// F(x, y) = cos y sin(xy) - x sin y cos(xy), the mode condition with the index made continuous.
double mode_surface(double x, double y);

struct ImplicitCurve {
  std::vector<std::vector<Vec2>> polylines;
};

// Zero set of mode_surface on [x0, x1] x [y0, y1] with resolution^2 cells.
ImplicitCurve implicit_curve_sample(std::pair<double, double> x_range,
                                    std::pair<double, double> y_range, std::size_t resolution);

// Two readings of "the curve meets the line at the integer n": y-roots of F(n, y) (the mode
// index on the x-axis, which is what find_mode_roots uses) and x-roots of F(x, n).
std::vector<double> implicit_slice_x(double n, std::pair<double, double> y_range,
                                     std::size_t nodes = 10000);
std::vector<double> implicit_slice_y(double n, std::pair<double, double> x_range,
                                     std::size_t nodes = 10000);

// lambda (1 + s f(u)) (cos u, sin u), with lambda fixing the area at pi.
class RadialCurve final : public Boundary {
 public:
  RadialCurve(PerturbationField f, double s);

  double s() const { return s_; }
  double lambda() const { return lambda_; }
  // Area of 1 + s f before rescaling: pi (1 + s^2 sum c^2 / 2).
  double raw_area() const { return raw_area_; }
  const PerturbationField& field() const { return f_; }

  double radius(double u) const;

  BoundaryFrame frame(double u) const override;
  double area() const override { return kPi; }
  double param_of_normal_angle(double angle) const override;

 private:
  PerturbationField f_;
  double s_;
  double lambda_ = 1.0;
  double raw_area_ = 0.0;
};

RadialCurve build_perturbed_domain(const PerturbationField& f, double s);

// -2 int_0^{2pi} f^2 du = -2 pi sum(c^2).
double aggregate_second_variation(const PerturbationField& f);

enum class Verdict { FirstOrderDecrease, SecondOrderDecrease, Inconclusive };
const char* to_string(Verdict v);

struct ExperimentOptions {
  std::size_t oracle_grid = 128;
  unsigned threads = 1;
  // Lower bound on the per-point oracle tolerance. The tolerance at each s is the gap between
  // oracle runs on two grids, but never below this.
  double min_oracle_tol = 1e-12;
};

struct ExperimentReport {
  double area = 0.0;
  std::vector<double> s_values;
  std::vector<double> profile_values;
  std::vector<double> oracle_tolerances;
  double profile_at_zero = 0.0;
  // Coefficients of s and s^2 in the lowest-degree polynomial (no constant term, degree >= 2)
  // whose residuals all lie within 10x the oracle tolerance.
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t fit_degree = 2;
  // False when even the highest admissible degree leaves residuals above 10x tolerance.
  bool fit_resolved = false;
  // 10x oracle tolerance carried through the chosen fit.
  double noise_floor = 0.0;
  // Plain quadratic fit, for comparison.
  double alpha_quadratic = 0.0;
  double beta_quadratic = 0.0;
  // min_u l(u) at the disk arc of this area: the first-order profile change.
  double predicted_alpha = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

// Fits I(s) - I(0) = alpha s + beta s^2 + ... to oracle profiles of the perturbed domains.
ExperimentReport profile_decrease_experiment(const PerturbationField& f, double area,
                                             const std::vector<double>& s_grid,
                                             const ExperimentOptions& opt = {});

}  // namespace isoperim
