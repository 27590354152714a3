#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isoperim/arcs.hpp"
#include "isoperim/geometry.hpp"

namespace isoperim {

struct ProfileSample {
  double theta = 0.0;
  double area = 0.0;
  double length = 0.0;
  double curvature = 0.0;
};

struct ProfileTable {
  std::vector<ProfileSample> samples;
  std::uint64_t domain_id = 0;
  // Largest gap between the Green's-theorem areas and the integral of dL / k.
  double crosscheck_residual = 0.0;
  bool all_contained = true;
};

// FNV-1a over the coefficient bytes; equal specs give equal ids.
std::uint64_t domain_id(const SupportCurve& curve);

// Perfect arcs of a doubly symmetric curve that are symmetric about the x-axis: the arc
// through C(theta) and C(-theta) around the vertex at theta = 0.
//   y(theta) = int_0^theta cos(w) rho(w) dw,  L = (pi - 2 theta) y / cos(theta),
//   k = cos(theta) / y.
class SymmetricFamily {
 public:
  explicit SymmetricFamily(SupportCurve curve);

  const SupportCurve& curve() const { return curve_; }

  double y(double theta) const;
  double length(double theta) const;
  double curvature(double theta) const;
  // dL/dtheta.
  double length_derivative(double theta) const;
  // (1/k) dL/dtheta, the integrand of A(theta) by dL = k dA.
  double area_rate(double theta) const;
  // Enclosed area by Green's theorem on the actual arc.
  PerfectArc arc(double theta) const;
  // Family member with enclosed area `area`, for area in (0, A(pi/2)].
  double theta_at_area(double area) const;

 private:
  SupportCurve curve_;
};

// Chebyshev-Lobatto angles in (0, pi/2]; with n even, pi/4 is one of them.
std::vector<double> graded_thetas(std::size_t n);

// Requires a class-A curve (or a disk) of area pi. The curve is turned so that its largest
// curvature sits on the x-axis before the family is traced.
ProfileTable symmetric_profile(const SupportCurve& domain, std::size_t n_samples,
                               unsigned threads = 1);

struct ConjectureReport {
  double sup_ratio = 0.0;
  double argmax_area = 0.0;
  bool passed = false;
  double margin = 0.0;
  // False when the largest ratio sits at the small-area end of the grid, where it tends
  // to 1 from below; the stationarity relation is then not applicable.
  bool interior_max = false;
  double stationarity_residual = 0.0;
  // Smallest area at which the raw ratio is trusted; below it the small-area expansion
  // 1 - 4 (kappa_max - 1) sqrt(a) / (3 pi sqrt(2 pi)) is used.
  double area_floor = 0.0;
  double kappa_max = 0.0;
  // Ratio samples (area, L / L*) actually compared.
  std::vector<std::pair<double, double>> ratios;
};

ConjectureReport conjecture_check(const SupportCurve& domain, std::size_t n_samples,
                                  unsigned threads = 1);

struct OracleCandidate {
  double t1 = 0.0;
  double t2 = 0.0;  // t1 < t2 < t1 + 2 pi; the region is swept from t1 to t2
  double length = 0.0;
  double curvature = 0.0;
};

struct OracleResult {
  double area = 0.0;
  double length = 0.0;
  OracleCandidate best;
  // Perfect contained arcs of the requested area, shortest first.
  std::vector<OracleCandidate> candidates;
  // Number of candidates within tolerance of the minimum (symmetric copies included).
  std::size_t minimizer_count = 0;
  // Two minimizers with different arc curvature: since dL/dA = k along each family, the
  // one-sided derivatives of the profile differ here.
  bool kink = false;
};

// Brute-force profile of a convex domain. The zero set of the normalized two-point
// function is traced on the torus (t1, d), t2 = t1 + d, and every branch is cut at the
// requested area. Circles, where every pair is perfect, are handled by a one-parameter
// search over the separation d.
class ProfileOracle {
 public:
  ProfileOracle(const Boundary& domain, std::size_t grid, unsigned threads = 1);

  OracleResult query(double area) const;
  double length_at(double area) const { return query(area).length; }
  bool is_circle() const { return circle_; }

 private:
  struct Node {
    double t1 = 0.0, d = 0.0, area = 0.0;
  };
  double project(double& t1, double& d) const;
  double area_of(double t1, double d) const;

  const Boundary& domain_;
  double scale_ = 1.0;
  bool circle_ = false;
  std::vector<std::pair<Node, Node>> branches_;
};

double general_profile_oracle(const Boundary& domain, double target_area, std::size_t grid,
                              unsigned threads = 1);

}  // namespace isoperim
