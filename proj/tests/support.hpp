#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isoperim/geometry.hpp"
#include "isoperim/numerics.hpp"

namespace testing {

using isoperim::kPi;
using isoperim::SupportCurve;

inline SupportCurve ellipse_pi(double eps) { return SupportCurve::ellipse(1.0 + eps, 1.0 / (1.0 + eps)); }

inline SupportCurve wide_ellipse() { return SupportCurve::ellipse(std::sqrt(2.0), 1.0 / std::sqrt(2.0)); }

// rho = a0 - 0.3 cos 2t - 0.06 cos 4t before scaling: doubly symmetric, four vertices,
// not an ellipse.
inline SupportCurve fourier_class_a() {
  return isoperim::normalize_area(SupportCurve({1.0, 0.0, 0.1, 0.0, 0.004}), kPi);
}

// rho'' vanishes at theta = 0: a flat vertex.
inline SupportCurve flat_vertex_curve() { return SupportCurve({1.0, 0.0, 0.05, 0.0, -0.0025}); }

// No symmetry at all.
inline SupportCurve lopsided_curve() { return SupportCurve({1.0, 0.0, 0.1}, {0.0, 0.0, 0.0, 0.02}); }

inline SupportCurve non_convex_curve() { return SupportCurve({1.0, 0.0, 0.5}); }

inline std::vector<SupportCurve> class_a_suite() {
  return {wide_ellipse(), ellipse_pi(0.3), ellipse_pi(0.1), ellipse_pi(0.01), fourier_class_a()};
}

// Smooth strictly convex curve with a few random modes, rho >= 1/2 by construction.
class CurveSampler {
 public:
  explicit CurveSampler(std::uint64_t seed) : rng_(seed) {}

  SupportCurve next(int max_mode = 6) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(max_mode + 1, 0.0), s(max_mode + 1, 0.0);
    c[0] = 1.0;
    const double budget = 0.5 / max_mode;  // per mode share of the rho margin
    for (int m = 1; m <= max_mode; ++m) {
      const double cap = m == 1 ? 0.3 : budget / (m * m - 1.0);
      c[m] = cap * u(rng_) / std::sqrt(2.0);
      s[m] = cap * u(rng_) / std::sqrt(2.0);
    }
    return SupportCurve(std::move(c), std::move(s));
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace testing
