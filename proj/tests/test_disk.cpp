#include <doctest.h>

#include <cmath>

#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"
#include "isoperim/profile.hpp"

using namespace isoperim;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("theta_to_area") {
  CHECK(disk::theta_to_area(kPi / 4) == doctest::Approx(kPi / 2 - 1.0).epsilon(1e-15));
  CHECK(disk::theta_to_area(1e-6) < 2e-12);
  CHECK(disk::theta_to_area(1e-6) > 0.0);
  CHECK(disk::theta_to_area(kPi / 2 - 1e-9) == doctest::Approx(kPi / 2).epsilon(1e-8));
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { disk::theta_to_area(0.0); }));
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { disk::theta_to_area(2.0); }));
}

TEST_CASE("theta_to_area and theta_to_length increase strictly") {
  double a_prev = 0.0, l_prev = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    const double th = 0.5 * kPi * k / 2001.0;
    const double a = disk::theta_to_area(th);
    const double l = disk::theta_to_length(th);
    CHECK(a > a_prev);
    CHECK(l > l_prev);
    a_prev = a;
    l_prev = l;
  }
}

TEST_CASE("small angles keep full relative accuracy") {
  // reference in long double, where the cancellation still leaves ~10 good digits
  for (long double th : {1e-3L, 1e-4L, 1e-5L}) {
    const long double t = std::tan(th);
    const long double a = th - t + (0.5L * 3.14159265358979323846264338327950288L - th) * t * t;
    CHECK(disk::theta_to_area(static_cast<double>(th)) == doctest::Approx(static_cast<double>(a)).epsilon(1e-9));
  }
  CHECK(disk::theta_to_length(1e-5) == doctest::Approx((kPi - 2e-5) * std::tan(1e-5)).epsilon(1e-15));
}

TEST_CASE("profile_I") {
  CHECK(disk::profile_I(kPi / 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(disk::profile_I(kPi / 2 - 1.0) == doctest::Approx(kPi / 2).epsilon(1e-13));
  const double a = 1e-6;
  CHECK(disk::profile_I(a) == doctest::Approx(std::sqrt(2 * kPi * a)).epsilon(1e-2));
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { disk::profile_I(0.0); }));
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { disk::profile_I(kPi); }));
}

TEST_CASE("profile_I is symmetric about half area") {
  for (int k = 1; k < 100; ++k) {
    const double a = kPi * k / 100.0;
    CHECK(disk::profile_I(a) == doctest::Approx(disk::profile_I(kPi - a)).epsilon(1e-14));
  }
}

TEST_CASE("area_to_theta inverts theta_to_area") {
  for (int k = 1; k < 50; ++k) {
    const double th = 0.5 * kPi * k / 50.0;
    CHECK(disk::area_to_theta(disk::theta_to_area(th)) == doctest::Approx(th).epsilon(1e-13));
  }
}

TEST_CASE("disk_arc at a quarter turn") {
  const PerfectArc arc = disk::disk_arc(0.0, kPi / 4);
  CHECK(arc.center.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(arc.center.y) < 1e-15);
  CHECK(arc.radius == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(arc.curvature == doctest::Approx(1.0).epsilon(1e-14));
  const double r = std::sqrt(0.5);
  CHECK(std::abs(std::abs(arc.start.x) - r) < 1e-14);
  CHECK(std::abs(std::abs(arc.start.y) - r) < 1e-14);
  CHECK(std::abs(arc.end.y + arc.start.y) < 1e-14);
  const double sep = arc.endpoint_thetas.second - arc.endpoint_thetas.first;
  CHECK(sep == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(arc.enclosed_area == doctest::Approx(kPi / 2 - 1.0).epsilon(1e-13));
  CHECK(arc.length == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("disk_arc for any rotation") {
  for (double u : {0.0, 0.7, 2.0, -1.3, 5.0}) {
    for (double th : {0.05, 0.4, 1.0, 1.5}) {
      const PerfectArc arc = disk::disk_arc(u, th);
      CHECK(arc.curvature == doctest::Approx(1.0 / std::tan(th)).epsilon(1e-13));
      CHECK(arc.orthogonality_residual < 1e-12);
      CHECK(norm(arc.center) == doctest::Approx(1.0 / std::cos(th)).epsilon(1e-13));
      CHECK(std::abs(norm(arc.start - arc.center) - arc.radius) < 1e-12);
      CHECK(std::abs(norm(arc.end - arc.center) - arc.radius) < 1e-12);
      CHECK(std::abs(norm(arc.start) - 1.0) < 1e-14);
      CHECK(arc.contained);
    }
  }
  CHECK(throws_kind(ErrorKind::OutOfRange, [] { disk::disk_arc(0.0, -0.1); }));
}

TEST_CASE("dL/dtheta = k dA/dtheta along the disk family") {
  for (int k = 1; k < 100; ++k) {
    const double th = 0.5 * kPi * k / 100.0;
    const double h = 1e-4 * std::min(th, 0.1);
    const double dl = (disk::theta_to_length(th + h) - disk::theta_to_length(th - h)) / (2 * h);
    const double da = (disk::theta_to_area(th + h) - disk::theta_to_area(th - h)) / (2 * h);
    CHECK(dl == doctest::Approx(da / std::tan(th)).epsilon(1e-6));
  }
}

TEST_CASE("profile_I agrees with the brute-force oracle") {
  const SupportCurve unit = SupportCurve::disk();
  const ProfileOracle oracle(unit, 64);
  for (double a : {0.05, 0.3, 0.9, kPi / 2, 2.2, 3.0}) {
    CHECK(std::abs(oracle.length_at(a) - disk::profile_I(a)) < 1e-8);
  }
}
