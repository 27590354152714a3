#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

namespace isoperim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle to [0, 2pi).
double wrap_2pi(double a);
// Reduces an angle to (-pi, pi].
double wrap_pi(double a);

// Composite 20-point Gauss-Legendre rule; panels are at most max_panel wide.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double max_panel = kPi / 16.0);

// Bracketed root of fn on [lo, hi] (TOMS 748). fn(lo) and fn(hi) must differ in sign.
// Stops once the bracket is narrower than xtol.
double solve_bracketed(const std::function<double(double)>& fn, double lo, double hi,
                       double xtol = 1e-14, int max_iter = 200);

// Plain bisection to xtol; used where the contract asks for bisection explicitly.
double bisect(const std::function<double(double)>& fn, double lo, double hi, double xtol);

// Uniform scan of fn over [lo, hi] with `nodes` samples; every strict sign change is
// refined by bisection to xtol. Exact zeros at nodes are reported once.
std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi,
                               std::size_t nodes, double xtol);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

// Maximum of a unimodal fn on [lo, hi] (Brent's golden-section/parabolic search).
Extremum maximize(const std::function<double(double)>& fn, double lo, double hi);

// Shape-preserving (PCHIP) interpolant over strictly increasing abscissae.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  ~MonotoneCubic();
  MonotoneCubic(MonotoneCubic&&) noexcept;
  MonotoneCubic& operator=(MonotoneCubic&&) noexcept;

  double operator()(double x) const;
  double front() const { return x_front_; }
  double back() const { return x_back_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double x_front_ = 0.0;
  double x_back_ = 0.0;
};

// Runs fn(i) for i in [0, n) on `threads` workers. Each index is handled exactly once,
// so callers writing into preallocated slots get results independent of the worker count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Worker count from ISOPERIM_THREADS, defaulting to 1.
unsigned threads_from_env();

}  // namespace isoperim
