#include "relgs/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace relgs {

Grid make_grid(int dim, double box_half_length, int points_per_axis,
               std::size_t sample_budget) {
  if (dim < 2) {
    throw GridError("grid dimension must be at least 2, got " +
                    std::to_string(dim));
  }
  if (!(box_half_length > 0.0)) {
    throw GridError("box half-length must be positive");
  }
  if (points_per_axis < 8 || points_per_axis % 2 != 0) {
    throw GridError("points per axis must be an even integer >= 8, got " +
                    std::to_string(points_per_axis));
  }

  std::size_t size = 1;
  for (int a = 0; a < dim; ++a) {
    if (size > sample_budget / static_cast<std::size_t>(points_per_axis)) {
      throw GridError("grid of " + std::to_string(points_per_axis) + "^" +
                      std::to_string(dim) +
                      " samples exceeds the sample budget of " +
                      std::to_string(sample_budget) +
                      "; resolution infeasible");
    }
    size *= static_cast<std::size_t>(points_per_axis);
  }

  Grid g;
  g.dim_ = dim;
  g.box_half_length_ = box_half_length;
  g.n_ = points_per_axis;
  g.spacing_ = 2.0 * box_half_length / points_per_axis;
  g.size_ = size;
  g.cell_volume_ = std::pow(g.spacing_, dim);
  g.volume_ = std::pow(2.0 * box_half_length, dim);

  g.coords_.resize(static_cast<std::size_t>(points_per_axis));
  g.freqs_.resize(static_cast<std::size_t>(points_per_axis));
  for (int j = 0; j < points_per_axis; ++j) {
    g.coords_[static_cast<std::size_t>(j)] = -box_half_length + j * g.spacing_;
    const int jp = j < points_per_axis / 2 ? j : j - points_per_axis;
    g.freqs_[static_cast<std::size_t>(j)] =
        std::numbers::pi * jp / box_half_length;
  }
  return g;
}

}  // namespace relgs
