#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "isoperim/vec2.hpp"

namespace isoperim {

// Rectangular sample grid. Node (i, j) sits at (x0 + i*dx, y0 + j*dy). With periodic_x the
// x-nodes cover [x0, x0 + x_period) and the last column of cells wraps to column 0.
struct ContourGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t nx = 2;
  double y0 = 0.0;
  double dy = 1.0;
  std::size_t ny = 2;
  bool periodic_x = false;

  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double y(std::size_t j) const { return y0 + dy * static_cast<double>(j); }
  std::size_t cells_x() const { return periodic_x ? nx : nx - 1; }
};

// A grid edge from node (i, j) to (i+1, j) when along_x, otherwise to (i, j+1).
struct GridEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  bool along_x = true;

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
};

struct EdgeCrossing {
  GridEdge edge;
  Vec2 point;  // linear-interpolation estimate, in grid coordinates (x unwrapped past x0+nx*dx)
};

struct ContourSegment {
  EdgeCrossing a;
  EdgeCrossing b;
};

// Zero-level segments of sampled values (row-major: values[j * nx + i]). Values >= 0 count
// as positive; saddle cells are split using the cell-centre average.
std::vector<ContourSegment> marching_squares(const std::vector<double>& values,
                                             const ContourGrid& grid);

// Samples fn on the grid (row-major), then extracts the zero set.
std::vector<double> sample_grid(const std::function<double(double, double)>& fn,
                                const ContourGrid& grid);

// Joins segments sharing an edge into polylines.
std::vector<std::vector<Vec2>> chain_segments(const std::vector<ContourSegment>& segments);

}  // namespace isoperim
