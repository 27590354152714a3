#pragma once

#include <cstddef>
#include <vector>

#include "isoperim/vec2.hpp"

namespace isoperim {

// Local frame of a boundary point. `speed` is |dC/dt| for the curve's own parameter t;
// `normal_angle` is the direction of the outward normal.
struct BoundaryFrame {
  Vec2 position;
  Vec2 tangent;  // unit, counterclockwise
  Vec2 normal;   // unit, outward
  double curvature = 0.0;
  double speed = 0.0;
  double normal_angle = 0.0;
};

// A smooth, closed, strictly convex curve traversed counterclockwise by a 2pi-periodic
// parameter. Implementations are immutable.
class Boundary {
 public:
  virtual ~Boundary() = default;

  virtual BoundaryFrame frame(double t) const = 0;
  virtual double area() const = 0;

  // Parameter of the point whose outward normal points along `angle`.
  virtual double param_of_normal_angle(double angle) const = 0;

  Vec2 position(double t) const { return frame(t).position; }

  // C(t1) - C(t2).
  virtual Vec2 chord(double t1, double t2) const;

  // (C(t1) - C(t2)) . m, where m is the unit bisector of the outward normals taken
  // counterclockwise from N(t1).
  virtual double chord_along_bisector(double t1, double t2) const;

  // 1/2 * integral of (C - origin) x C' dt over [t0, t1], t1 >= t0.
  double sweep_area(double t0, double t1, Vec2 origin) const;

  // Arclength between parameters t0 <= t1.
  double arclength(double t0, double t1) const;

  // True when p lies inside the closed domain up to `tol`, judged against the
  // supporting lines at the sampled boundary points.
  bool contains(Vec2 p, double tol = 1e-12) const;

 protected:
  // Fills the samples used by `contains`; derived constructors call this once.
  void build_support_samples(std::size_t n);

 private:
  std::vector<BoundaryFrame> support_samples_;
};

// Point of a support-function curve, parameterized by normal angle theta.
struct CurvePoint {
  double theta = 0.0;
  Vec2 position;
  Vec2 tangent;
  Vec2 normal;
  double curvature = 0.0;
};

// Convex curve given by its support function
//   h(theta) = a_0 + sum_{m>=1} (a_m cos m theta + b_m sin m theta).
// cos_coeffs holds a_0..a_M, sin_coeffs holds b_1..b_M (missing entries are zero).
class SupportCurve final : public Boundary {
 public:
  static constexpr std::size_t kConvexityNodes = 4096;

  SupportCurve(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs = {});

  static SupportCurve disk(double radius = 1.0);
  // Axis-aligned ellipse with semi-axes a (along x) and b (along y).
  static SupportCurve ellipse(double a, double b);

  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  std::size_t max_mode() const { return cos_.size() - 1; }

  // h and its first three theta-derivatives.
  struct Jet {
    double h, dh, d2h, d3h;
  };
  Jet support(double theta) const;

  // Radius of curvature rho = h + h'' and its derivatives up to third order.
  struct RadiusJet {
    double rho, drho, d2rho, d3rho;
  };
  RadiusJet radius_of_curvature(double theta) const;

  bool is_convex() const { return convex_; }
  double min_radius_of_curvature() const { return min_rho_; }

  // Arclength from theta = 0 to theta (closed form, monotone in theta).
  double arclength_from_zero(double theta) const;
  double theta_at_arclength(double s) const;

  // Same shape turned counterclockwise by `angle`.
  SupportCurve rotated(double angle) const;
  SupportCurve scaled(double factor) const;

  BoundaryFrame frame(double theta) const override;
  double area() const override;
  // Short chords are integrated from rho T instead of differencing positions, which keeps
  // full relative accuracy for the tiny arcs near a vertex.
  Vec2 chord(double t1, double t2) const override;
  double chord_along_bisector(double t1, double t2) const override;
  double param_of_normal_angle(double angle) const override { return angle; }

 private:
  std::vector<double> cos_;  // size M+1
  std::vector<double> sin_;  // size M+1, sin_[0] unused (zero)
  bool convex_ = true;
  double min_rho_ = 0.0;
};

CurvePoint eval(const SupportCurve& curve, double theta);
double area(const SupportCurve& curve);
double perimeter(const SupportCurve& curve);
SupportCurve normalize_area(const SupportCurve& curve, double target);

struct DomainClassReport {
  bool is_class_A = false;
  bool is_disk = false;
  bool symmetric_both_axes = false;
  // Set when some curvature critical point has |kappa''| below threshold.
  bool has_degenerate_vertex = false;
  std::vector<double> vertex_thetas;
  double kappa_max = 0.0;
  double kappa_min = 0.0;
  double theta_kappa_max = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  // kappa_max >= sqrt(pi / area) holds (with equality only for circles).
  bool pestov_ionin_holds = false;
};

DomainClassReport classify(const SupportCurve& curve);

// Class-A curve turned, if needed, so that its maximal curvature sits on the x-axis.
SupportCurve orient_major_axis_x(const SupportCurve& curve);

}  // namespace isoperim
