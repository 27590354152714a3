#include "isoperim/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

// pchip.hpp in Boost 1.74 calls an unqualified isnan; fpclassify must come first.
#include <boost/math/special_functions/fpclassify.hpp>
using boost::math::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "isoperim/errors.hpp"

namespace isoperim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::NotPerfect: return "NotPerfect";
    case ErrorKind::NormalsParallelButNotAligned: return "NormalsParallelButNotAligned";
    case ErrorKind::DegenerateGradient: return "DegenerateGradient";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotAVertex: return "NotAVertex";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::NotClassA: return "NotClassA";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::IsDisk: return "IsDisk";
    case ErrorKind::NoArcAtArea: return "NoArcAtArea";
    case ErrorKind::NonConvexPerturbation: return "NonConvexPerturbation";
    case ErrorKind::AreaNormalizationFailure: return "AreaNormalizationFailure";
    case ErrorKind::OracleFailure: return "OracleFailure";
    case ErrorKind::FitIllConditioned: return "FitIllConditioned";
  }
  return "Unknown";
}

double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_pi(double a) {
  double r = wrap_2pi(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

double integrate(const std::function<double(double)>& fn, double a, double b, double max_panel) {
  if (a == b) return 0.0;
  const double width = b - a;
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(width) / max_panel)));
  const double h = width / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double hi = (p + 1 == panels) ? b : lo + h;
    sum += boost::math::quadrature::gauss<double, 20>::integrate(fn, lo, hi);
  }
  return sum;
}

double solve_bracketed(const std::function<double(double)>& fn, double lo, double hi, double xtol,
                       int max_iter) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorKind::NoConvergence, "root is not bracketed");
  }
  auto tol = [xtol](double a, double b) {
    return std::abs(b - a) <= std::max(xtol, 4.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(std::abs(a), std::abs(b)));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto r = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

double bisect(const std::function<double(double)>& fn, double lo, double hi, double xtol) {
  double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorKind::NoConvergence, "root is not bracketed");
  }
  for (int it = 0; it < 200 && (hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi,
                               std::size_t nodes, double xtol) {
  std::vector<double> roots;
  if (nodes < 2) return roots;
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  double x_prev = lo;
  double f_prev = fn(lo);
  if (f_prev == 0.0) roots.push_back(lo);
  for (std::size_t i = 1; i < nodes; ++i) {
    const double x = (i + 1 == nodes) ? hi : lo + h * static_cast<double>(i);
    const double fx = fn(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (fx > 0.0) != (f_prev > 0.0)) {
      roots.push_back(bisect(fn, x_prev, x, xtol));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

Extremum maximize(const std::function<double(double)>& fn, double lo, double hi) {
  auto neg = [&fn](double x) { return -fn(x); };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52, iters);
  return {r.first, -r.second};
}

struct MonotoneCubic::Impl {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 4) {
    throw Error(ErrorKind::OutOfRange, "monotone cubic needs at least four matching samples");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw Error(ErrorKind::OutOfRange, "interpolation abscissae must be strictly increasing");
    }
  }
  x_front_ = x.front();
  x_back_ = x.back();
  impl_ = std::make_unique<Impl>(Impl{boost::math::interpolators::pchip<std::vector<double>>(
      std::move(x), std::move(y))});
}

MonotoneCubic::~MonotoneCubic() = default;
MonotoneCubic::MonotoneCubic(MonotoneCubic&&) noexcept = default;
MonotoneCubic& MonotoneCubic::operator=(MonotoneCubic&&) noexcept = default;

double MonotoneCubic::operator()(double x) const {
  return impl_->spline(std::clamp(x, x_front_, x_back_));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("ISOPERIM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

}  // namespace isoperim
