#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relgs {

/// Uniform periodic grid on the box [-L, L)^N.
///
/// Points per axis: y_j = -L + j*h, j = 0..n-1, with spacing h = 2L/n.
/// Frequencies per axis: k_t = pi*j'/L with j' = t for t < n/2 and
/// j' = t - n otherwise (standard transform storage order, Nyquist row
/// mapped to the negative side).
class Grid {
 public:
  Grid() = default;

  int dim() const { return dim_; }
  double box_half_length() const { return box_half_length_; }
  int points_per_axis() const { return n_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return size_; }

  /// Cell volume h^N.
  double cell_volume() const { return cell_volume_; }
  /// Box volume (2L)^N.
  double volume() const { return volume_; }

  double coord(int j) const { return coords_[static_cast<std::size_t>(j)]; }
  double freq(int t) const { return freqs_[static_cast<std::size_t>(t)]; }
  int freq_index(int t) const { return t < n_ / 2 ? t : t - n_; }

  /// Decompose a flat row-major index into per-axis indices (axis 0 slowest).
  void unflatten(std::size_t flat, int* out) const {
    for (int a = dim_ - 1; a >= 0; --a) {
      out[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
      flat /= static_cast<std::size_t>(n_);
    }
  }

  /// Squared Euclidean norm of the frequency vector at a flat spectral index.
  double freq_norm_sq(std::size_t flat) const {
    double s = 0.0;
    for (int a = dim_ - 1; a >= 0; --a) {
      const int t = static_cast<int>(flat % static_cast<std::size_t>(n_));
      flat /= static_cast<std::size_t>(n_);
      const double k = freqs_[static_cast<std::size_t>(t)];
      s += k * k;
    }
    return s;
  }

  /// Squared Euclidean distance of the grid point at a flat index from the origin.
  double coord_norm_sq(std::size_t flat) const {
    double s = 0.0;
    for (int a = dim_ - 1; a >= 0; --a) {
      const int t = static_cast<int>(flat % static_cast<std::size_t>(n_));
      flat /= static_cast<std::size_t>(n_);
      const double y = coords_[static_cast<std::size_t>(t)];
      s += y * y;
    }
    return s;
  }

  bool same_as(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ &&
           box_half_length_ == other.box_half_length_;
  }

  friend Grid make_grid(int dim, double box_half_length, int points_per_axis,
                        std::size_t sample_budget);

 private:
  int dim_ = 0;
  double box_half_length_ = 0.0;
  int n_ = 0;
  double spacing_ = 0.0;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
  double volume_ = 0.0;
  std::vector<double> coords_;
  std::vector<double> freqs_;
};

/// Default cap on n^N, overridable per call (keeps 3D runs from exhausting memory).
inline constexpr std::size_t kDefaultSampleBudget = std::size_t{1} << 27;

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Grid make_grid(int dim, double box_half_length, int points_per_axis,
               std::size_t sample_budget = kDefaultSampleBudget);

}  // namespace relgs
