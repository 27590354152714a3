#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "isoperim/contour.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/numerics.hpp"
#include "isoperim/profile.hpp"

namespace isoperim {

namespace {

constexpr double kCircleG = 1e-12;  // max |g| on the grid below which every pair is perfect

ArcOptions loose_arc() {
  ArcOptions o;
  o.require_perfect = false;
  o.test_containment = false;
  return o;
}

}  // namespace

double ProfileOracle::area_of(double t1, double d) const {
  return build_arc_oriented(domain_, t1, t1 + d, loose_arc()).enclosed_area;
}

// Pulls (t1, d) onto g = 0 along the gradient; returns the final |g|.
double ProfileOracle::project(double& t1, double& d) const {
  double gv = normalized_two_point(domain_, t1, t1 + d);
  for (int it = 0; it < 40 && std::abs(gv) > 1e-15 * scale_; ++it) {
    const auto [g1, g2] = normalized_two_point_grad(domain_, t1, t1 + d);
    const double gt = g1 + g2;  // d/dt1 with d held fixed
    const double nn = gt * gt + g2 * g2;
    if (!(nn > 0.0)) break;
    t1 -= gv * gt / nn;
    d -= gv * g2 / nn;
    gv = normalized_two_point(domain_, t1, t1 + d);
  }
  return std::abs(gv);
}

ProfileOracle::ProfileOracle(const Boundary& domain, std::size_t grid, unsigned threads)
    : domain_(domain), scale_(std::sqrt(domain.area())) {
  if (grid < 16) throw Error(ErrorKind::InvalidSpec, "oracle grid must have at least 16 nodes");

  ContourGrid g;
  g.x0 = 0.0;
  g.nx = grid;
  g.dx = kTwoPi / static_cast<double>(grid);
  g.dy = kTwoPi / static_cast<double>(grid + 1);
  g.y0 = g.dy;
  g.ny = grid;
  g.periodic_x = true;

  std::vector<double> values(g.nx * g.ny);
  parallel_for(g.ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      values[j * g.nx + i] = normalized_two_point(domain_, g.x(i), g.x(i) + g.y(j));
    }
  });

  double gmax = 0.0;
  for (double v : values) gmax = std::max(gmax, std::abs(v));
  if (gmax < kCircleG * scale_) {
    circle_ = true;
    return;
  }

  const std::vector<ContourSegment> segments = marching_squares(values, g);

  // Each crossing is shared by two segments; refine it once.
  using Key = std::tuple<std::size_t, std::size_t, bool>;
  std::map<Key, std::size_t> index;
  std::vector<GridEdge> edges;
  for (const auto& s : segments) {
    for (const GridEdge& e : {s.a.edge, s.b.edge}) {
      if (index.emplace(Key{e.i, e.j, e.along_x}, edges.size()).second) edges.push_back(e);
    }
  }

  std::vector<Node> nodes(edges.size());
  std::vector<char> ok(edges.size(), 0);
  parallel_for(edges.size(), threads, [&](std::size_t k) {
    const GridEdge& e = edges[k];
    const double t0 = g.x(e.i), d0 = g.y(e.j);
    const double t1e = e.along_x ? t0 + g.dx : t0;
    const double d1e = e.along_x ? d0 : d0 + g.dy;
    auto along = [&](double lam) {
      return normalized_two_point(domain_, t0 + lam * (t1e - t0), t0 + lam * (t1e - t0) + d0 + lam * (d1e - d0));
    };
    const double ga = along(0.0), gb = along(1.0);
    double lam;
    if (ga == 0.0) {
      lam = 0.0;
    } else if (gb == 0.0) {
      lam = 1.0;
    } else if ((ga > 0.0) != (gb > 0.0)) {
      lam = solve_bracketed(along, 0.0, 1.0, 1e-15);
    } else {
      return;
    }
    Node n;
    n.t1 = t0 + lam * (t1e - t0);
    n.d = d0 + lam * (d1e - d0);
    try {
      n.area = area_of(n.t1, n.d);
    } catch (const Error&) {
      return;
    }
    nodes[k] = n;
    ok[k] = 1;
  });

  for (const auto& s : segments) {
    const std::size_t a = index.at(Key{s.a.edge.i, s.a.edge.j, s.a.edge.along_x});
    const std::size_t b = index.at(Key{s.b.edge.i, s.b.edge.j, s.b.edge.along_x});
    if (!ok[a] || !ok[b]) continue;
    Node na = nodes[a], nb = nodes[b];
    // Keep the pair on one sheet of the periodic t1 axis.
    nb.t1 = na.t1 + wrap_pi(nb.t1 - na.t1);
    branches_.emplace_back(na, nb);
  }
}

OracleResult ProfileOracle::query(double area) const {
  const double total = domain_.area();
  if (!(area > 0.0 && area < total)) {
    throw Error(ErrorKind::OutOfRange, "target area must lie strictly inside (0, area)");
  }
  OracleResult res;
  res.area = area;
  const double area_tol = 1e-10 * total;

  if (circle_) {
    // Every pair is perfect; all arcs with the same separation are congruent.
    const double lo = 1e-6, hi = kTwoPi - 1e-6;
    const double alo = area_of(0.0, lo), ahi = area_of(0.0, hi);
    if (!(alo < area && area < ahi)) throw Error(ErrorKind::NoArcAtArea, "area outside the arc range");
    const double d = solve_bracketed([&](double x) { return area_of(0.0, x) - area; }, lo, hi, 1e-15);
    const PerfectArc arc = build_arc_oriented(domain_, 0.0, d);
    res.best = {0.0, d, arc.length, arc.curvature};
    res.candidates = {res.best};
    res.length = arc.length;
    res.minimizer_count = 1;
    return res;
  }

  for (const auto& [a, b] : branches_) {
    const double fa = a.area - area, fb = b.area - area;
    if ((fa > 0.0) == (fb > 0.0) && fa != 0.0 && fb != 0.0) continue;
    double t1 = 0.0, d = 0.0;
    auto residual = [&](double lam) {
      t1 = a.t1 + lam * (b.t1 - a.t1);
      d = a.d + lam * (b.d - a.d);
      project(t1, d);
      return area_of(t1, d) - area;
    };
    try {
      double lam = 0.0;
      if (fa == 0.0) {
        lam = 0.0;
      } else if (fb == 0.0) {
        lam = 1.0;
      } else {
        lam = solve_bracketed(residual, 0.0, 1.0, 1e-15);
      }
      residual(lam);
      const PerfectArc arc = build_arc_oriented(domain_, t1, t1 + d);
      if (!arc.contained || std::abs(arc.enclosed_area - area) > area_tol) continue;
      OracleCandidate c{wrap_2pi(t1), wrap_2pi(t1) + d, arc.length, arc.curvature};
      res.candidates.push_back(c);
    } catch (const Error&) {
      continue;  // projection slid off a branch or the arc is not perfect
    }
  }
  if (res.candidates.empty()) {
    throw Error(ErrorKind::NoArcAtArea, "no perfect arc of the requested area on this grid");
  }

  std::sort(res.candidates.begin(), res.candidates.end(),
            [](const OracleCandidate& x, const OracleCandidate& y) {
              return std::tie(x.length, x.t1) < std::tie(y.length, y.t1);
            });
  // Neighbouring branch pieces can report the same arc.
  std::vector<OracleCandidate> unique;
  for (const auto& c : res.candidates) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const OracleCandidate& u) {
      return std::abs(wrap_pi(u.t1 - c.t1)) < 1e-7 && std::abs(u.t2 - u.t1 - (c.t2 - c.t1)) < 1e-7;
    });
    if (!dup) unique.push_back(c);
  }
  res.candidates = std::move(unique);
  res.best = res.candidates.front();
  res.length = res.best.length;

  const double len_tol = 1e-9 * scale_;
  const double k_tol = 1e-6 / scale_;
  for (const auto& c : res.candidates) {
    if (c.length - res.length > len_tol) break;
    ++res.minimizer_count;
    if (std::abs(c.curvature - res.best.curvature) > k_tol) res.kink = true;
  }
  return res;
}

double general_profile_oracle(const Boundary& domain, double target_area, std::size_t grid,
                              unsigned threads) {
  return ProfileOracle(domain, grid, threads).length_at(target_area);
}

}  // namespace isoperim
