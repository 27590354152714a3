#include <doctest.h>

#include <cmath>

#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"
#include "isoperim/perturbation.hpp"
#include "isoperim/profile.hpp"
#include "support.hpp"

using namespace isoperim;
using testing::CurveSampler;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

PerturbationField random_field(CurveSampler& gen, int modes) {
  PerturbationField f;
  for (int n = 1; n <= modes; ++n) {
    f.fourier_cos.push_back(gen.uniform(-1, 1));
    f.fourier_sin.push_back(gen.uniform(-1, 1));
  }
  return f;
}

double sup_abs_l(const PerturbationField& f, double b) {
  double m = 0.0;
  for (int k = 0; k < 2000; ++k) m = std::max(m, std::abs(first_variation_l(f, b, kTwoPi * k / 2000.0)));
  return m;
}

// l(u) by direct quadrature, independent of the closed-form integral.
double l_by_quadrature(const PerturbationField& f, double b, double u) {
  const double i = integrate([&](double x) { return f.value(x); }, u, u + 2 * b);
  return -i / std::tan(b) + f.value(u) + f.value(u + 2 * b);
}

}  // namespace

TEST_CASE("field basics") {
  const PerturbationField f = PerturbationField::cos_mode(3, 0.5);
  CHECK(f.value(0.2) == doctest::Approx(0.5 * std::cos(0.6)));
  CHECK(f.derivative(0.2) == doctest::Approx(-1.5 * std::sin(0.6)));
  CHECK(f.second_derivative(0.2) == doctest::Approx(-4.5 * std::cos(0.6)));
  CHECK(f.antiderivative(0.2) == doctest::Approx(0.5 * std::sin(0.6) / 3));
  CHECK(f.energy() == doctest::Approx(0.25));
  CHECK(PerturbationField{}.is_zero());
  CHECK(throws_kind(ErrorKind::InvalidSpec, [] { PerturbationField::cos_mode(0); }));
}

TEST_CASE("first_variation_l examples") {
  const PerturbationField c1 = PerturbationField::cos_mode(1);
  for (double b : {0.1, 0.7, 1.5}) CHECK(sup_abs_l(c1, b) < 1e-14);

  const PerturbationField c2 = PerturbationField::cos_mode(2);
  for (double u : {0.0, 0.4, 1.3, 3.0, 5.1}) {
    CHECK(first_variation_l(c2, kPi / 4, u) == doctest::Approx(std::sin(2 * u)).epsilon(1e-14));
  }
  CHECK(std::abs(first_variation_l(c2, kPi / 4, 0.0)) < 1e-15);

  const PerturbationField c4 = PerturbationField::cos_mode(4);
  CHECK(sup_abs_l(c4, std::acos(1 / std::sqrt(6.0))) < 1e-10);

  CHECK(throws_kind(ErrorKind::OutOfRange, [&] { first_variation_l(c2, 0.0, 0.0); }));
  CHECK(throws_kind(ErrorKind::OutOfRange, [&] { first_variation_l(c2, 1.6, 0.0); }));
}

TEST_CASE("first_variation_l agrees with quadrature of the defining integral") {
  CurveSampler gen(9);
  for (int i = 0; i < 20; ++i) {
    const PerturbationField f = random_field(gen, 6);
    const double b = gen.uniform(0.05, 1.5), u = gen.uniform(0, kTwoPi);
    CHECK(first_variation_l(f, b, u) == doctest::Approx(l_by_quadrature(f, b, u)).epsilon(1e-11));
  }
}

TEST_CASE("mean_l vanishes") {
  CHECK(std::abs(mean_l(PerturbationField::cos_mode(2), kPi / 4)) < 1e-14);
  CHECK(std::abs(mean_l(PerturbationField::sin_mode(3), 1.0)) < 1e-14);
  PerturbationField mix;
  mix.fourier_cos = {1.0};
  mix.fourier_sin = {0, 0, 0, 0, 0.3};
  CHECK(std::abs(mean_l(mix, 0.7)) < 1e-14);

  CurveSampler gen(21);
  for (int i = 0; i < 50; ++i) {
    CHECK(std::abs(mean_l(random_field(gen, 8), gen.uniform(0.01, kPi / 2))) < 1e-12);
  }
}

TEST_CASE("translations have l = 0") {
  CurveSampler gen(4);
  for (int i = 0; i < 20; ++i) {
    PerturbationField f;
    f.fourier_cos = {gen.uniform(-1, 1)};
    f.fourier_sin = {gen.uniform(-1, 1)};
    CHECK(sup_abs_l(f, gen.uniform(0.01, 1.56)) < 1e-13);
  }
}

TEST_CASE("nonzero l always dips below zero") {
  CurveSampler gen(8);
  for (int i = 0; i < 30; ++i) {
    const PerturbationField f = random_field(gen, 5);
    const double b = gen.uniform(0.05, 1.5);
    if (sup_abs_l(f, b) < 1e-8) continue;
    const auto [lmin, at] = min_first_variation(f, b);
    CHECK(lmin < 0.0);
    CHECK(first_variation_l(f, b, at) == doctest::Approx(lmin));
  }
  const auto [m2, u2] = min_first_variation(PerturbationField::cos_mode(2), kPi / 4);
  CHECK(m2 == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mode_condition reductions") {
  for (double b : {0.1, 0.5, 1.0, 1.5}) {
    CHECK(std::abs(mode_condition(1, b)) < 1e-15);
    CHECK(mode_condition(2, b) == doctest::Approx(2 * std::pow(std::sin(b), 3)).epsilon(1e-13));
    CHECK(mode_condition(3, b) == doctest::Approx(8 * std::pow(std::sin(b), 3) * std::cos(b)).epsilon(1e-12));
    const double c2 = std::cos(b) * std::cos(b);
    CHECK(mode_condition(4, b) == doctest::Approx(4 * std::pow(std::sin(b), 3) * (6 * c2 - 1)).epsilon(1e-11));
  }
  CHECK(std::abs(mode_condition(4, std::acos(1 / std::sqrt(6.0)))) < 1e-14);
}

TEST_CASE("find_mode_roots") {
  CHECK(find_mode_roots(2).empty());
  CHECK(find_mode_roots(3).empty());
  const auto r4 = find_mode_roots(4);
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].b == doctest::Approx(std::acos(1 / std::sqrt(6.0))).epsilon(1e-14));
  CHECK(std::tan(r4[0].b) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));
  CHECK(r4[0].theta == r4[0].b);
  CHECK(r4[0].area == doctest::Approx(disk::theta_to_area(r4[0].b)).epsilon(1e-15));
  CHECK(r4[0].area == doctest::Approx(1.01687).epsilon(1e-5));
  const auto r5 = find_mode_roots(5);
  REQUIRE(r5.size() == 1);
  CHECK(r5[0].b == doctest::Approx(std::atan(std::sqrt(5.0 / 3.0))).epsilon(1e-14));
  for (int n = 4; n <= 12; ++n) {
    const auto roots = find_mode_roots(n);
    CHECK(!roots.empty());
    for (const ModeRoot& m : roots) {
      CHECK(std::abs(mode_condition(n, m.b)) < 1e-12);
      CHECK(m.b > 0.0);
      CHECK(m.b < kPi / 2);
      CHECK(sup_abs_l(PerturbationField::cos_mode(n), m.b) < 1e-10);
      CHECK(sup_abs_l(PerturbationField::sin_mode(n), m.b) < 1e-10);
    }
  }
  CHECK(throws_kind(ErrorKind::InvalidSpec, [] { find_mode_roots(1); }));
}

TEST_CASE("implicit curve") {
  CHECK(std::abs(mode_surface(1.0, 0.77)) < 1e-15);
  CHECK(std::abs(mode_surface(4.0, std::acos(1 / std::sqrt(6.0)))) < 1e-14);
  CHECK(std::abs(mode_surface(2.0, 0.5)) > 0.1);

  const ImplicitCurve c = implicit_curve_sample({0.0, 8.0}, {0.0, 1.57}, 200);
  REQUIRE(!c.polylines.empty());
  std::size_t points = 0;
  bool near_line_one = false, near_root4 = false;
  const double b4 = std::acos(1 / std::sqrt(6.0));
  for (const auto& line : c.polylines) {
    for (const Vec2& p : line) {
      ++points;
      if (std::abs(p.x - 1.0) < 1e-6) near_line_one = true;
      if (std::abs(p.x - 4.0) < 0.05 && std::abs(p.y - b4) < 0.01) near_root4 = true;
    }
  }
  CHECK(points > 100);
  CHECK(near_line_one);
  CHECK(near_root4);

  const auto sx = implicit_slice_x(4.0, {1e-6, kPi / 2 - 1e-6});
  REQUIRE(sx.size() == 1);
  CHECK(sx[0] == doctest::Approx(b4).epsilon(1e-12));
  // x-roots of F(x, n) at the height n = 1: the line x = 1 among them
  const auto sy = implicit_slice_y(1.0, {0.5, 8.0});
  CHECK(std::any_of(sy.begin(), sy.end(), [](double x) { return std::abs(x - 1.0) < 1e-10; }));
}

TEST_CASE("perturbed domains") {
  const RadialCurve zero = build_perturbed_domain(PerturbationField::cos_mode(4), 0.0);
  CHECK(zero.lambda() == 1.0);
  CHECK(zero.radius(0.7) == 1.0);

  const RadialCurve shift = build_perturbed_domain(PerturbationField::cos_mode(1), 0.05);
  CHECK(shift.raw_area() == doctest::Approx(kPi * (1 + 0.05 * 0.05 / 2)).epsilon(1e-14));

  const RadialCurve c4 = build_perturbed_domain(PerturbationField::cos_mode(4), 1e-2);
  CHECK(c4.sweep_area(0.0, kTwoPi, {0.0, 0.0}) == doctest::Approx(kPi).epsilon(1e-12));
  for (double u : {0.0, 0.3, 2.0}) {
    const BoundaryFrame fr = c4.frame(u);
    CHECK(std::abs(norm(fr.normal) - 1) < 1e-14);
    CHECK(std::abs(dot(fr.normal, fr.tangent)) < 1e-14);
    CHECK(fr.curvature > 0.0);
    CHECK(c4.param_of_normal_angle(fr.normal_angle) == doctest::Approx(u).epsilon(1e-12));
  }
  CHECK(throws_kind(ErrorKind::NonConvexPerturbation,
                    [] { build_perturbed_domain(PerturbationField::cos_mode(4), 0.2); }));
}

TEST_CASE("aggregate second variation by Parseval") {
  CHECK(aggregate_second_variation(PerturbationField::cos_mode(4)) == doctest::Approx(-2 * kPi).epsilon(1e-15));
  CHECK(aggregate_second_variation(PerturbationField{}) == 0.0);
  PerturbationField f;
  f.fourier_cos = {0, 0, 0, 1};
  f.fourier_sin = {0, 0, 0, 1};
  CHECK(aggregate_second_variation(f) == doctest::Approx(-4 * kPi).epsilon(1e-15));
  CurveSampler gen(13);
  for (int i = 0; i < 20; ++i) {
    const PerturbationField r = random_field(gen, 4);
    const double direct = -2 * integrate([&](double u) { return r.value(u) * r.value(u); }, 0, kTwoPi);
    CHECK(aggregate_second_variation(r) < 0.0);
    CHECK(aggregate_second_variation(r) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("a translated disk has the disk's profile") {
  // h = 1 + s cos(theta) is the unit circle moved by s along x
  for (double s : {1e-3, 1e-2}) {
    const SupportCurve moved({1.0, s});
    const ProfileOracle oracle(moved, 48);
    CHECK(oracle.is_circle());
    for (double a : {0.4, 1.0167}) CHECK(std::abs(oracle.length_at(a) - disk::profile_I(a)) < 1e-10);
  }
}

TEST_CASE("experiment preconditions") {
  const PerturbationField f = PerturbationField::cos_mode(2);
  CHECK(throws_kind(ErrorKind::FitIllConditioned, [&] { profile_decrease_experiment(f, 1.0, {1e-3, 2e-3}); }));
  CHECK(throws_kind(ErrorKind::FitIllConditioned, [&] { profile_decrease_experiment(f, 1.0, {1e-3, 1e-3, 1e-3}); }));
  CHECK(throws_kind(ErrorKind::OutOfRange, [&] { profile_decrease_experiment(f, 0.0, {1e-3, 2e-3, 3e-3}); }));
  CHECK(throws_kind(ErrorKind::InvalidSpec,
                    [&] { profile_decrease_experiment(PerturbationField{}, 1.0, {1e-3, 2e-3, 3e-3}); }));
  CHECK(throws_kind(ErrorKind::NonConvexPerturbation,
                    [&] { profile_decrease_experiment(PerturbationField::cos_mode(4), 1.0, {0.1, 0.2, 0.3}); }));
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::FirstOrderDecrease)) == "first_order_decrease");
  CHECK(std::string(to_string(Verdict::SecondOrderDecrease)) == "second_order_decrease");
  CHECK(std::string(to_string(Verdict::Inconclusive)) == "inconclusive");
}
