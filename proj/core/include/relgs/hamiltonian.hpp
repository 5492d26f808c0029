#pragma once

#include <string>
#include <vector>

#include "relgs/field.hpp"
#include "relgs/potential.hpp"

namespace relgs {

struct ProblemError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Full parameter set of the constrained minimization:
///   E[w] = K/2 + (eta/p) * int |w|^p - (sigma/4) * int (W * w^2) w^2
/// with K = <w, (sqrt(-Lap + m^2) - m) w> and the constraint int w^2 = M.
struct Problem {
  int dim = 3;
  double m = 1.0;             // rest mass in the kinetic symbol
  double eta = 0.0;           // defocusing coupling, >= 0
  double sigma = 1.0;         // focusing coupling, > 0
  double p = 3.0;             // power-term exponent
  PotentialSpec potential;    // two-body kernel W
  double weak_q = 3.0;        // weak-space exponent of W
  double target_mass = 1.0;   // prescribed squared L2 norm M

  static Problem with_defaults(int dim, PotentialSpec W);

  /// All violated admissibility conditions, empty when valid.
  std::vector<std::string> validate() const;
  bool valid() const { return validate().empty(); }

  /// eta = 0 with q = N: the energy is bounded below only up to a critical mass.
  bool mass_critical() const;

  double critical_trace_exponent() const {  // 2N/(N-1)
    return 2.0 * dim / (dim - 1.0);
  }
};

struct EnergyBreakdown {
  double kinetic = 0.0;  // K >= 0
  double power = 0.0;    // P = int |w|^p
  double hartree = 0.0;  // D = int (W * w^2) w^2
  double total = 0.0;    // K/2 + (eta/p) P - (sigma/4) D
};

/// Cancellation-safe sqrt(|k|^2 + m^2) - m.
double kinetic_symbol(double m, double k_norm_sq);

/// Problem + grid bound together with the precomputed multiplier tables.
/// Operations are pure with respect to the field arguments.
class Hamiltonian {
 public:
  Hamiltonian(Problem problem, Grid grid);

  const Problem& problem() const { return problem_; }
  const Grid& grid() const { return grid_; }
  const PotentialSymbol& potential_symbol() const { return symbol_; }
  const std::vector<double>& kinetic_symbols() const { return kin_; }
  double max_kinetic_symbol() const { return kin_max_; }

  Field apply_T_minus_m(const Field& w) const;

  /// (W * w^2) on the grid through the symbol.
  std::vector<double> hartree_potential(const Field& w) const;

  EnergyBreakdown energy(const Field& w) const;

  /// Unconstrained L2 gradient (T - m) w + eta |w|^{p-2} w - sigma (W*w^2) w.
  Field gradient(const Field& w) const;

  struct MultiplierResult {
    double mu = 0.0;       // (sigma D - K - eta P) / M
    double mu_alt = 0.0;   // from the stationarity identity through I
    double rel_disagreement = 0.0;
  };
  MultiplierResult lagrange_multiplier(const Field& w) const;

  /// sum |xi|^2 |w_hat|^2 / (2L)^N, the boundary gradient energy used by
  /// separable competitors and the small-dilation expansion.
  double boundary_gradient_energy(const Field& w) const;

  /// sum |xi| |w_hat|^2 / (2L)^N, the massless kinetic form, the large-
  /// dilation slope of the kinetic term.
  double massless_kinetic(const Field& w) const;

 private:
  void check_field(const Field& w) const;

  Problem problem_;
  Grid grid_;
  PotentialSymbol symbol_;
  std::vector<double> kin_;
  double kin_max_ = 0.0;
};

}  // namespace relgs
