#include "isoperim/contour.hpp"

#include <array>
#include <deque>
#include <map>
#include <tuple>

#include "isoperim/errors.hpp"

namespace isoperim {

namespace {

std::tuple<std::size_t, std::size_t, bool> key(const GridEdge& e) { return {e.i, e.j, e.along_x}; }

}  // namespace

std::vector<double> sample_grid(const std::function<double(double, double)>& fn,
                                const ContourGrid& grid) {
  std::vector<double> values(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) values[j * grid.nx + i] = fn(grid.x(i), grid.y(j));
  }
  return values;
}

std::vector<ContourSegment> marching_squares(const std::vector<double>& values,
                                             const ContourGrid& grid) {
  if (grid.nx < 2 || grid.ny < 2 || values.size() != grid.nx * grid.ny) {
    throw Error(ErrorKind::OutOfRange, "contour grid and sample count disagree");
  }
  std::vector<ContourSegment> out;
  auto at = [&](std::size_t i, std::size_t j) { return values[j * grid.nx + (i % grid.nx)]; };

  for (std::size_t j = 0; j + 1 < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.cells_x(); ++i) {
      const double v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
      const bool s00 = v00 >= 0.0, s10 = v10 >= 0.0, s11 = v11 >= 0.0, s01 = v01 >= 0.0;

      // Edge order: bottom, right, top, left.
      const std::array<bool, 4> cut = {s00 != s10, s10 != s11, s01 != s11, s00 != s01};
      auto crossing = [&](int e) {
        const double x_lo = grid.x(i), y_lo = grid.y(j);
        EdgeCrossing c;
        switch (e) {
          case 0: {
            const double t = v00 / (v00 - v10);
            c.edge = {i, j, true};
            c.point = {x_lo + t * grid.dx, y_lo};
            break;
          }
          case 1: {
            const double t = v10 / (v10 - v11);
            c.edge = {(i + 1) % grid.nx, j, false};
            c.point = {x_lo + grid.dx, y_lo + t * grid.dy};
            break;
          }
          case 2: {
            const double t = v01 / (v01 - v11);
            c.edge = {i, j + 1, true};
            c.point = {x_lo + t * grid.dx, y_lo + grid.dy};
            break;
          }
          default: {
            const double t = v00 / (v00 - v01);
            c.edge = {i, j, false};
            c.point = {x_lo, y_lo + t * grid.dy};
            break;
          }
        }
        return c;
      };

      int count = 0;
      for (bool c : cut) count += c ? 1 : 0;
      if (count == 2) {
        std::array<int, 2> idx{};
        int k = 0;
        for (int e = 0; e < 4; ++e) {
          if (cut[e]) idx[k++] = e;
        }
        out.push_back({crossing(idx[0]), crossing(idx[1])});
      } else if (count == 4) {
        const double centre = 0.25 * (v00 + v10 + v11 + v01);
        if ((centre >= 0.0) == s00) {
          out.push_back({crossing(0), crossing(1)});
          out.push_back({crossing(3), crossing(2)});
        } else {
          out.push_back({crossing(0), crossing(3)});
          out.push_back({crossing(1), crossing(2)});
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<Vec2>> chain_segments(const std::vector<ContourSegment>& segments) {
  // Edge -> segments touching it (at most two for a manifold contour).
  std::map<std::tuple<std::size_t, std::size_t, bool>, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    touching[key(segments[s].a.edge)].push_back(s);
    touching[key(segments[s].b.edge)].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<Vec2>> lines;

  auto next_from = [&](const EdgeCrossing& end, std::size_t current) -> std::ptrdiff_t {
    for (std::size_t s : touching[key(end.edge)]) {
      if (s != current && !used[s]) return static_cast<std::ptrdiff_t>(s);
    }
    return -1;
  };

  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::deque<EdgeCrossing> line{segments[start].a, segments[start].b};
    for (int dir = 0; dir < 2; ++dir) {
      std::size_t current = start;
      while (true) {
        const EdgeCrossing& end = dir == 0 ? line.back() : line.front();
        const std::ptrdiff_t nxt = next_from(end, current);
        if (nxt < 0) break;
        const auto n = static_cast<std::size_t>(nxt);
        used[n] = true;
        const ContourSegment& seg = segments[n];
        const EdgeCrossing& far = seg.a.edge == end.edge ? seg.b : seg.a;
        if (dir == 0) {
          line.push_back(far);
        } else {
          line.push_front(far);
        }
        current = n;
      }
    }
    std::vector<Vec2> pts;
    pts.reserve(line.size());
    for (const auto& c : line) pts.push_back(c.point);
    lines.push_back(std::move(pts));
  }
  return lines;
}

}  // namespace isoperim
