// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "isoperim/arcs.hpp"
#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/geometry.hpp"
#include "isoperim/numerics.hpp"
#include "isoperim/perturbation.hpp"
#include "isoperim/profile.hpp"
#include "support.hpp"

using namespace isoperim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

// Disk cap area for contact angle theta, straight from the formula; inverted by plain
// bisection so the expected values do not go through the library's disk module.
double cap_area(double th) {
  const double t = std::tan(th);
  return th - t + (kPi / 2 - th) * t * t;
}

double cap_theta(double a) {
  double lo = 1e-9, hi = kPi / 2 - 1e-12;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cap_area(mid) < a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome c1_disk_oracle() {
  const auto t0 = Clock::now();
  const SupportCurve unit = SupportCurve::disk();
  const ProfileOracle oracle(unit, 64, workers());
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double a = 0.05 + (kPi / 2 - 0.05) * k / 19.0;
    const double th = cap_theta(a);
    const double want = k == 19 ? 2.0 : (kPi - 2 * th) * std::tan(th);
    worst = std::max(worst, std::abs(oracle.length_at(a) - want));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6 && secs < 10.0, fmt("max |oracle - closed form| = %.2e over 20 areas, %.2f s", worst, secs)};
}

Outcome c2_half_area() {
  const SupportCurve e = testing::wide_ellipse();
  const double oracle = general_profile_oracle(e, kPi / 2, 128, workers());
  const double family = SymmetricFamily(e).length(kPi / 2);
  const bool ok = oracle <= std::sqrt(2.0) + 1e-6 && oracle < 2.0 && family <= std::sqrt(2.0) + 1e-6;
  return {ok, fmt("I(pi/2) = %.12f by oracle, %.12f by the symmetric family (sqrt 2 = %.12f)", oracle, family,
                  std::sqrt(2.0))};
}

Outcome c3_conjecture() {
  // ordered from far to near the disk
  const std::vector<std::pair<std::string, SupportCurve>> ellipses = {
      {"ellipse(sqrt2)", testing::wide_ellipse()},
      {"eps=0.3", testing::ellipse_pi(0.3)},
      {"eps=0.1", testing::ellipse_pi(0.1)},
      {"eps=0.01", testing::ellipse_pi(0.01)}};
  bool ok = true;
  std::string detail;
  double prev_margin = INFINITY;
  for (const auto& [name, c] : ellipses) {
    const ConjectureReport r = conjecture_check(c, 512, workers());
    ok = ok && r.passed && r.sup_ratio < 1.0 && r.margin < prev_margin;
    prev_margin = r.margin;
    detail += fmt("%s margin %.3e; ", name.c_str(), r.margin);
  }
  const ConjectureReport f = conjecture_check(testing::fourier_class_a(), 512, workers());
  ok = ok && f.passed && f.sup_ratio < 1.0;
  detail += fmt("fourier sup %.12f", f.sup_ratio);
  return {ok, detail};
}

// (I(a) - sqrt(2 pi a)) / a at a = 1e-3, 1e-4, 1e-5, Richardson-extrapolated in sqrt(a).
double richardson_slope(const std::function<double(double)>& profile) {
  const double as[] = {1e-3, 1e-4, 1e-5};
  double d[3];
  for (int i = 0; i < 3; ++i) d[i] = (profile(as[i]) - std::sqrt(2 * kPi * as[i])) / as[i];
  const double r = std::sqrt(10.0);
  const double r1a = (r * d[1] - d[0]) / (r - 1);
  const double r1b = (r * d[2] - d[1]) / (r - 1);
  return (10 * r1b - r1a) / 9;
}

Outcome c4_small_area() {
  const double disk_slope = richardson_slope([](double a) { return disk::profile_I(a); });
  const double disk_want = -4.0 / (3 * kPi);
  const SymmetricFamily fam(testing::wide_ellipse());
  const double ell_slope = richardson_slope([&](double a) { return fam.length(fam.theta_at_area(a)); });
  const double ell_want = -8 * std::sqrt(2.0) / (3 * kPi);
  const double e1 = std::abs(disk_slope / disk_want - 1), e2 = std::abs(ell_slope / ell_want - 1);
  return {e1 < 0.02 && e2 < 0.02, fmt("disk %.8f vs %.8f (%.1e); ellipse %.8f vs %.8f (%.1e)", disk_slope,
                                      disk_want, e1, ell_slope, ell_want, e2)};
}

Outcome c5_dl_equals_k_da() {
  std::vector<SupportCurve> domains = testing::class_a_suite();
  domains.push_back(SupportCurve::disk());
  double worst = 0.0, worst_theta = 0.0;
  for (const SupportCurve& c0 : domains) {
    const SupportCurve c = classify(c0).is_disk ? c0 : orient_major_axis_x(c0);
    for (double th : graded_thetas(512)) {
      if (th == kPi / 2) continue;  // k = 0 there, the relative residual is undefined
      // Near 0, L ~ theta and A ~ theta^2 with even-order terms too, so the central difference
      // is off by O(h^2 / theta): shrink the step with theta there. Elsewhere L and A are
      // smooth (through pi/2 as well) and a fixed step is enough.
      const double h = 1e-4 * std::min(th, 1.0);
      const PerfectArc lo = build_arc(c, th - h, -(th - h));
      const PerfectArc hi = build_arc(c, th + h, -(th + h));
      const double fd = (hi.length - lo.length) / (hi.enclosed_area - lo.enclosed_area);
      const double k = build_arc(c, th, -th).curvature;
      const double rel = std::abs(fd - k) / std::abs(k);
      if (rel > worst) {
        worst = rel;
        worst_theta = th;
      }
    }
  }
  return {worst < 1e-5, fmt("max relative residual %.2e (at theta = %.6f) over 6 domains x 511 angles", worst,
                            worst_theta)};
}

Outcome c6_lemmas() {
  bool l31 = true, l32 = true, l33 = true, l34 = true;
  for (const SupportCurve& c0 : testing::class_a_suite()) {
    const SupportCurve c = orient_major_axis_x(c0);
    for (int k = 1; k < 1000; ++k) {
      const CurvePoint p = eval(c, 0.5 * kPi * k / 1000.0);
      l31 = l31 && dot(p.position, p.tangent) < 0.0;
    }
    const ProfileTable t = symmetric_profile(c, 512, workers());
    l32 = l32 && t.all_contained;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      l33 = l33 && t.samples[i].area > t.samples[i - 1].area && t.samples[i].length > t.samples[i - 1].length;
    }
    for (const ProfileSample& s : t.samples) {
      const double star = s.theta == kPi / 2 ? 2.0 : disk::theta_to_length(s.theta);
      l34 = l34 && s.length < star;
    }
  }
  return {l31 && l32 && l33 && l34,
          fmt("3.1 %s, 3.2 %s, 3.3 %s, 3.4 %s on 5 domains", l31 ? "ok" : "FAIL", l32 ? "ok" : "FAIL",
              l33 ? "ok" : "FAIL", l34 ? "ok" : "FAIL")};
}

Outcome c7_gradients() {
  const SupportCurve e = testing::wide_ellipse();
  testing::CurveSampler gen(7);
  const auto f = [&](double a, double b) {
    const CurvePoint p = eval(e, a), q = eval(e, b);
    return dot(p.position - q.position, p.normal + q.normal);
  };
  double worst = 0.0;
  int tested = 0;
  while (tested < 100) {
    const double a = gen.uniform(0, kTwoPi), b = gen.uniform(0, kTwoPi);
    if (std::abs(wrap_pi(a - b)) < 0.05) continue;
    const double h = 1e-5;
    const double g1 = (f(a + h, b) - f(a - h, b)) / (2 * h) / e.radius_of_curvature(a).rho;
    const double g2 = (f(a, b + h) - f(a, b - h)) / (2 * h) / e.radius_of_curvature(b).rho;
    const double scale = std::hypot(g1, g2);
    if (scale < 1e-3) continue;
    const auto g = two_point_grad(e, a, b);
    worst = std::max(worst, std::hypot(g.first - g1, g.second - g2) / scale);
    ++tested;
  }
  double sym = 0.0;
  for (double v : {0.0, kPi / 2}) {
    for (const auto& m : vertex_family(e, v, {0.1, 0.05, 0.02, 0.01, 0.005, 0.001})) {
      sym = std::max(sym, std::abs(m.s2 + m.s1));
    }
  }
  return {worst < 1e-6 && sym < 1e-10,
          fmt("grad max rel err %.2e on 100 pairs; vertex families max |s2 + s1| = %.1e", worst, sym)};
}

Outcome c8_roots() {
  const auto r2 = find_mode_roots(2), r3 = find_mode_roots(3), r4 = find_mode_roots(4), r5 = find_mode_roots(5);
  bool ok = r2.empty() && r3.empty() && r4.size() == 1 && r5.size() == 1;
  double cond = 0.0, lmax = 0.0;
  if (ok) {
    ok = std::abs(r4[0].b - std::acos(1 / std::sqrt(6.0))) < 1e-12 &&
         std::abs(r5[0].b - std::atan(std::sqrt(5.0 / 3.0))) < 1e-12;
    cond = std::max(std::abs(mode_condition(4, r4[0].b)), std::abs(mode_condition(5, r5[0].b)));
    const PerturbationField f = PerturbationField::cos_mode(4);
    for (int k = 0; k < 4000; ++k) lmax = std::max(lmax, std::abs(first_variation_l(f, r4[0].b, kTwoPi * k / 4000.0)));
  }
  ok = ok && cond < 1e-12 && lmax < 1e-10;
  return {ok, fmt("n=2,3 empty; b4 = %.12f, b5 = %.12f; |cond| %.1e; sup|l| %.1e", r4.empty() ? 0.0 : r4[0].b,
                  r5.empty() ? 0.0 : r5[0].b, cond, lmax)};
}

Outcome c9_dichotomy() {
  const auto t0 = Clock::now();
  ExperimentOptions opt;
  opt.threads = workers();
  const std::vector<double> s = {1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
  const PerturbationField c2 = PerturbationField::cos_mode(2);
  // b = pi/4, where l(u) = sin 2u
  const ExperimentReport quarter = profile_decrease_experiment(c2, kPi / 2 - 1, s, opt);
  // the half-area diameters, b = pi/2, where l(u) = 2 cos 2u
  const ExperimentReport half = profile_decrease_experiment(c2, kPi / 2, s, opt);
  const double b4 = std::acos(1 / std::sqrt(6.0));
  const ExperimentReport crit = profile_decrease_experiment(PerturbationField::cos_mode(4), cap_area(b4), s, opt);
  const double parseval = aggregate_second_variation(PerturbationField::cos_mode(4));
  const double secs = seconds_since(t0);

  const bool first = quarter.verdict == Verdict::FirstOrderDecrease && quarter.alpha < 0 &&
                     std::abs(quarter.alpha / -1.0 - 1) < 0.05;
  const bool first_half = half.verdict == Verdict::FirstOrderDecrease && half.alpha < 0 &&
                          std::abs(half.alpha / half.predicted_alpha - 1) < 0.05;
  const bool second = crit.verdict == Verdict::SecondOrderDecrease && std::abs(crit.alpha) < crit.noise_floor &&
                      crit.beta < 0;
  const bool pars = parseval == -2 * kPi;
  return {first && first_half && second && pars && secs < 120,
          fmt("cos2u: alpha %.6f at A=pi/2-1 (min l = -1), %.6f at A=pi/2 (min l = %.3f); cos4u at A=%.5f: "
              "alpha %.1e (floor %.1e), beta %.4f; Parseval %.15f; %.1f s",
              quarter.alpha, half.alpha, half.predicted_alpha, crit.area, crit.alpha, crit.noise_floor, crit.beta,
              parseval, secs)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "disk closed form vs oracle", c1_disk_oracle},
      {2, "half-area bound on the ellipse", c2_half_area},
      {3, "conjecture check suite", c3_conjecture},
      {4, "small-area slope", c4_small_area},
      {5, "dL = k dA along symmetric families", c5_dl_equals_k_da},
      {6, "lemma suite", c6_lemmas},
      {7, "two-point gradients and vertex families", c7_gradients},
      {8, "mode roots", c8_roots},
      {9, "first/second order dichotomy", c9_dichotomy},
  };
  int failures = 0;
  bool all_ran = true;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
      all_ran = false;
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  // No published tables to match: the checks above are the property and oracle comparisons
  // that stand in for them, so this line only records that each of them produced a result.
  std::printf("%s 10 no published numbers to reproduce: %s\n", all_ran ? "PASS" : "FAIL",
              all_ran ? "criteria 1-9 all evaluated" : "some criterion did not run to completion");
  if (!all_ran) ++failures;
  return failures == 0 ? 0 : 1;
}
