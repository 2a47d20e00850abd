#include "samplab/grid.hpp"

#include <cmath>

#include "samplab/errors.hpp"

namespace samplab {

namespace {

double weight_at(const std::string& name, const Point& x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  if (name == "uniform") return 1.0;
  if (name == "cone") return 1.0 - std::sqrt(sq);
  if (name == "gaussian") return std::exp(-0.5 * sq);
  throw ArgumentError("unknown grid weights '" + name + "'");
}

double grid_half_width(const std::string& name, int dim) {
  if (name == "uniform") return 1.0;
  if (name == "cone") return dim == 1 ? 1.0 : 0.7;
  if (name == "gaussian") return 2.5;
  throw ArgumentError("unknown grid weights '" + name + "'");
}

}  // namespace

GridSpec make_grid(const std::string& weights, int dim, int n) {
  if (dim != 1 && dim != 2) throw ArgumentError("make_grid: dim must be 1 or 2");
  if (n < 2) throw ArgumentError("make_grid: n must be at least 2");
  GridSpec grid;
  grid.dim = dim;
  grid.n = n;
  grid.weight_name = weights;
  const double hw = grid_half_width(weights, dim);
  grid.box.lo.assign(static_cast<std::size_t>(dim), -hw);
  grid.box.hi.assign(static_cast<std::size_t>(dim), hw);
  const double h = 2.0 * hw / n;
  const auto center = [&](int k) { return -hw + (static_cast<double>(k) + 0.5) * h; };
  if (dim == 1) {
    for (int i = 0; i < n; ++i) grid.centers.push_back({center(i)});
  } else {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) grid.centers.push_back({center(r), center(c)});
  }
  grid.rho.reserve(grid.centers.size());
  for (const Point& x : grid.centers) {
    const double w = weight_at(weights, x);
    if (!(w > 0.0))
      throw ConstructionError("grid weight vanishes at a cell center for '" +
                              weights + "'");
    grid.rho.push_back(w);
  }
  return grid;
}

}  // namespace samplab
