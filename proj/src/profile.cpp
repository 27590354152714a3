#include "isoperim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"

namespace isoperim {

namespace {

constexpr double kAreaFloor = 1e-8;

// eps / sin(eps)
double eps_over_sin(double eps) {
  if (eps < 1e-4) return 1.0 + eps * eps / 6.0;
  return eps / std::sin(eps);
}

// (sin eps - eps cos eps) / sin^3 eps, which tends to 1/3 at eps = 0.
double bend_ratio(double eps) {
  const double s = std::sin(eps);
  if (eps < 0.05) {
    const double e2 = eps * eps;
    const double num = eps * e2 * (1.0 / 3.0 - e2 * (1.0 / 30.0 - e2 * (1.0 / 840.0 - e2 / 45360.0)));
    return num / (s * s * s);
  }
  return (s - eps * std::cos(eps)) / (s * s * s);
}

void require_area_pi(const SupportCurve& c) {
  if (std::abs(c.area() - kPi) > 1e-9 * kPi) {
    throw Error(ErrorKind::NotNormalized, "domain area must be pi");
  }
}

}  // namespace

std::uint64_t domain_id(const SupportCurve& curve) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](const std::vector<double>& v) {
    for (double x : v) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &x, sizeof x);
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
      }
    }
  };
  feed(curve.cos_coeffs());
  feed(curve.sin_coeffs());
  return h;
}

SymmetricFamily::SymmetricFamily(SupportCurve curve) : curve_(std::move(curve)) {}

double SymmetricFamily::y(double theta) const {
  // dC_y/dtheta = rho cos(theta), so the integral is a difference of support-point heights.
  const auto j = curve_.support(theta);
  return j.h * std::sin(theta) + j.dh * std::cos(theta) - curve_.support(0.0).dh;
}

double SymmetricFamily::length(double theta) const {
  return 2.0 * y(theta) * eps_over_sin(0.5 * kPi - theta);
}

double SymmetricFamily::curvature(double theta) const {
  return std::sin(0.5 * kPi - theta) / y(theta);
}

double SymmetricFamily::length_derivative(double theta) const {
  const double eps = 0.5 * kPi - theta;
  const double rho = curve_.radius_of_curvature(theta).rho;
  return 2.0 * rho * eps - 2.0 * y(theta) * bend_ratio(eps) * std::sin(eps);
}

double SymmetricFamily::area_rate(double theta) const {
  const double eps = 0.5 * kPi - theta;
  const double rho = curve_.radius_of_curvature(theta).rho;
  const double yy = y(theta);
  return 2.0 * rho * yy * eps_over_sin(eps) - 2.0 * yy * yy * bend_ratio(eps);
}

PerfectArc SymmetricFamily::arc(double theta) const { return build_arc(curve_, theta, -theta); }

double SymmetricFamily::theta_at_area(double area) const {
  ArcOptions quick;
  quick.test_containment = false;
  auto a_of = [&](double th) { return build_arc(curve_, th, -th, quick).enclosed_area; };
  const double top = a_of(0.5 * kPi);
  if (!(area > 0.0 && area <= top)) {
    throw Error(ErrorKind::OutOfRange, "area outside the symmetric family");
  }
  if (area == top) return 0.5 * kPi;
  return solve_bracketed([&](double th) { return a_of(th) - area; }, 1e-12, 0.5 * kPi, 1e-16);
}

std::vector<double> graded_thetas(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidSpec, "need at least two samples");
  std::vector<double> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double c = std::cos(kPi * static_cast<double>(i) / static_cast<double>(n));
    out[i - 1] = 0.25 * kPi * (1.0 - c);
  }
  out.back() = 0.5 * kPi;
  if (n % 2 == 0) out[n / 2 - 1] = 0.25 * kPi;
  return out;
}

ProfileTable symmetric_profile(const SupportCurve& domain, std::size_t n_samples,
                               unsigned threads) {
  const DomainClassReport cls = classify(domain);
  if (!cls.is_class_A && !cls.is_disk) {
    throw Error(ErrorKind::NotClassA, "symmetric profile needs a class-A domain");
  }
  require_area_pi(domain);

  const SymmetricFamily family(cls.is_disk ? domain : orient_major_axis_x(domain));
  const std::vector<double> thetas = graded_thetas(n_samples);

  ProfileTable table;
  table.domain_id = domain_id(domain);
  table.samples.resize(n_samples);
  std::vector<char> contained(n_samples, 0);
  std::vector<double> pieces(n_samples, 0.0);
  parallel_for(n_samples, threads, [&](std::size_t i) {
    const double th = thetas[i];
    const PerfectArc arc = family.arc(th);
    table.samples[i] = {th, arc.enclosed_area, family.length(th), family.curvature(th)};
    contained[i] = arc.contained ? 1 : 0;
    const double lo = i == 0 ? 0.0 : thetas[i - 1];
    pieces[i] = integrate([&](double t) { return family.area_rate(t); }, lo, th);
  });

  double cumulative = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    cumulative += pieces[i];
    table.crosscheck_residual =
        std::max(table.crosscheck_residual, std::abs(cumulative - table.samples[i].area));
    table.all_contained = table.all_contained && contained[i] != 0;
  }
  return table;
}

ConjectureReport conjecture_check(const SupportCurve& domain, std::size_t n_samples,
                                  unsigned threads) {
  const DomainClassReport cls = classify(domain);
  if (cls.is_disk) throw Error(ErrorKind::IsDisk, "the disk is the equality case");
  if (!cls.is_class_A) throw Error(ErrorKind::NotClassA, "conjecture check needs a class-A domain");
  require_area_pi(domain);

  const ProfileTable table = symmetric_profile(domain, n_samples, threads);
  ConjectureReport rep;
  rep.area_floor = kAreaFloor;
  rep.kappa_max = cls.kappa_max;

  std::vector<double> areas, lengths;
  for (const auto& s : table.samples) {
    if (s.area < kAreaFloor) continue;
    areas.push_back(s.area);
    lengths.push_back(s.length);
    rep.ratios.emplace_back(s.area, s.length / disk::profile_I(s.area));
  }
  if (rep.ratios.size() < 4) throw Error(ErrorKind::InvalidSpec, "too few samples above the area floor");

  std::size_t best = 0;
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    if (rep.ratios[i].second > rep.ratios[best].second) best = i;
  }
  rep.sup_ratio = rep.ratios[best].second;
  rep.argmax_area = rep.ratios[best].first;
  rep.interior_max = best > 0 && best + 1 < rep.ratios.size();

  if (rep.interior_max) {
    const MonotoneCubic length_of_area(areas, lengths);
    const auto peak = maximize(
        [&](double a) { return length_of_area(a) / disk::profile_I(a); }, areas[best - 1],
        areas[best + 1]);
    if (peak.value > rep.sup_ratio) {
      rep.sup_ratio = peak.value;
      rep.argmax_area = peak.x;
    }
    const SymmetricFamily family(orient_major_axis_x(domain));
    const double th = family.theta_at_area(rep.argmax_area);
    const double th_star = disk::area_to_theta(rep.argmax_area);
    rep.stationarity_residual =
        std::abs((kPi - 2.0 * th) / (kPi - 2.0 * th_star) - rep.sup_ratio * rep.sup_ratio);
  }

  // Below the floor the ratio behaves like 1 - c (kappa_max - 1) sqrt(a), c > 0.
  rep.passed = rep.sup_ratio < 1.0 && rep.kappa_max > 1.0;
  rep.margin = 1.0 - rep.sup_ratio;
  return rep;
}

}  // namespace isoperim
