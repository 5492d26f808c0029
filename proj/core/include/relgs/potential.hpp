#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relgs/field.hpp"
#include "relgs/grid.hpp"

namespace relgs {

struct PotentialError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// W(r) = r^{-alpha}; lies in the weak L^{N/alpha} space.
struct PowerLaw {
  double alpha = 1.0;
};

/// W(r) = e^{-mu r}/r (3D screened interaction).
struct Yukawa {
  double mu = 1.0;
};

/// Radial kernel given by samples (linear interpolation, zero beyond the
/// last radius). Radii strictly increasing, values nonnegative.
struct TabulatedRadial {
  std::vector<double> radii;
  std::vector<double> values;
};

class PotentialSpec {
 public:
  using Variant = std::variant<PowerLaw, Yukawa, TabulatedRadial>;

  PotentialSpec() : kind_(PowerLaw{}) {}
  explicit PotentialSpec(Variant kind);

  static PotentialSpec power_law(double alpha) {
    return PotentialSpec(PowerLaw{alpha});
  }
  static PotentialSpec yukawa(double mu) { return PotentialSpec(Yukawa{mu}); }
  static PotentialSpec tabulated(std::vector<double> radii,
                                 std::vector<double> values) {
    return PotentialSpec(TabulatedRadial{std::move(radii), std::move(values)});
  }
  /// Null interaction (identically zero kernel).
  static PotentialSpec zero() { return tabulated({0.0, 1.0}, {0.0, 0.0}); }

  const Variant& kind() const { return kind_; }
  bool is_power_law() const { return std::holds_alternative<PowerLaw>(kind_); }
  bool is_zero() const;

  /// Pointwise evaluation W(r), r > 0.
  double evaluate(double r) const;

  /// Default weak-space exponent for dimension N: N/alpha for the power law,
  /// N for the screened kernel, 2N for bounded tabulated kernels.
  double default_weak_exponent(int dim) const;

  /// Homogeneity degree for dilation scaling where one is exact (power law);
  /// empty otherwise.
  std::optional<double> homogeneity_alpha() const;

  std::string describe() const;

 private:
  Variant kind_;
};

/// Fourier symbol of W sampled on a grid's frequency set.
struct PotentialSymbol {
  Grid grid;
  std::vector<double> values;  // one per spectral index, symmetric in k
  double zero_mode = 0.0;      // values at k = 0 (duplicate of the entry)
  std::string zero_mode_convention;
};

/// Continuum Fourier constant c(N, alpha) with F[|y|^{-alpha}](k) =
/// c(N, alpha) |k|^{alpha-N}.
double power_law_fourier_constant(int dim, double alpha);

/// Surface area of the unit sphere in R^N.
double unit_sphere_area(int dim);
/// Volume of the unit ball in R^N.
double unit_ball_volume(int dim);

PotentialSymbol symbol_on_grid(const PotentialSpec& potential, const Grid& grid);

/// Convolution (W * rho) evaluated through the symbol.
std::vector<double> convolve(const PotentialSymbol& symbol,
                             const Field& density);

struct WeakNormResult {
  double value = 0.0;
  double argmax_radius = 0.0;
  bool lower_bound_only = false;  // set for non-monotone tabulated kernels
};

/// sup over centered balls B_R of |B_R|^{-1/r} * integral_{B_R} W, with r the
/// conjugate exponent of q. Quadrature in the radius plus a 1D maximization.
WeakNormResult weak_lq_norm(const PotentialSpec& potential, double q, int dim,
                            double radius_hint = 1.0);

struct ScalingHypothesisReport {
  double worst_margin = 0.0;  // min over samples of W(r/l) - l^alpha W(r),
                              // relative to max(W(r), tiny); >= 0 means holds
  std::size_t violations = 0;
  std::size_t samples = 0;
  double worst_lambda = 0.0;
  double worst_radius = 0.0;
  bool holds() const { return violations == 0; }
};

/// Checks W(lambda^{-1} r) >= lambda^alpha W(r) over the sampled (lambda, r).
ScalingHypothesisReport check_scaling_hypothesis(
    const PotentialSpec& potential, double alpha,
    const std::vector<double>& lambda_samples,
    const std::vector<double>& radius_samples);

/// Loads a two-column CSV (radius, value) with strictly increasing radii.
PotentialSpec load_tabulated_csv(const std::string& path);

}  // namespace relgs
