#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relgs/diagnostics.hpp"
#include "relgs/hamiltonian.hpp"

namespace relgs {

struct MinimizerError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SolveOptions {
  double tol_res = 1e-8;       // stop when ||g_proj|| <= tol_res * max(1, |E|)
  std::size_t max_iter = 20000;
  double tau0 = 0.0;           // 0 = auto: 1 / (max kinetic symbol + 1)
  double tau_min = 1e-14;
  double collapse_floor = 0.0; // 0 = auto: -1e6 * max(m, 1) * M
  double guard_factor = 0.45;  // flags collapse when the critical-trace norm
                               // exceeds guard_factor * sqrt(M / h)
  bool recenter_on_convergence = true;
  bool keep_energy_history = false;
};

enum class SolveStatus { Converged, Collapsing, Stalled, MaxIterations };

std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterations;
  bool converged = false;
  Field w;
  EnergyBreakdown breakdown;
  double I_value = 0.0;  // total energy on the constraint
  double mu = 0.0;
  double mu_alt = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  FieldDiagnostics diagnostics;
  std::vector<double> energy_history;
  // Provenance for reproducibility.
  std::uint64_t seed = 0;
  std::string zero_mode_convention;
  std::string guard_note;
};

enum class GuessKind { Gaussian, Custom, SeededRandom };

struct InitialGuess {
  GuessKind kind = GuessKind::Gaussian;
  double width = 0.0;  // 0 = auto: L/6
  Field custom;
  std::uint64_t seed = 0;
};

/// Nonnegative field of the problem's target mass.
Field initial_guess(const Problem& pb, const Grid& grid, const InitialGuess& g);

/// Projected gradient descent with backtracking on the fixed-mass manifold.
SolveReport solve(const Hamiltonian& ham, const Field& w0,
                  const SolveOptions& opts = {});

enum class DilationClass { Bounded, Collapsing, Inconclusive };

std::string to_string(DilationClass c);

struct DilationProbe {
  std::vector<double> lambdas;
  std::vector<double> energies;    // t(lambda) = E[w_lambda], exact in the
                                   // spectral realization of the dilation
  DilationClass classification = DilationClass::Inconclusive;
  double asymptotic_slope = 0.0;   // fitted coefficient of lambda as lambda -> inf
  double min_energy_small_lambda = 0.0;  // min over sampled lambda in (0, 1)
  bool resampled_hartree = false;  // set when W is not a power law
};

/// Energy along the mass-preserving dilation family, kinetic part evaluated
/// in closed form on the spectrum; the interaction term scales exactly for
/// power-law kernels and is resampled otherwise.
DilationProbe dilation_probe(const Hamiltonian& ham, const Field& w,
                             double lambda_max = 64.0);

/// Upper bound on the constrained infimum along the separable trial family
/// e^{-m x} u_lambda: t(lambda) = lambda^2/(4m) * grad-energy
/// + eta/p * lambda^{N(p/2-1)} * P - sigma/4 * lambda^alpha * D.
struct NegativityProbe {
  std::vector<double> lambdas;
  std::vector<double> values;
  double min_value = 0.0;
  double argmin_lambda = 0.0;
  bool negative = false;
};

NegativityProbe negativity_probe(const Hamiltonian& ham, const Field& trial,
                                 std::size_t lambda_count = 64);

enum class MassClass { Subcritical, Supercritical, Inconclusive };

std::string to_string(MassClass c);

struct MassPoint {
  double mass = 0.0;
  MassClass cls = MassClass::Inconclusive;
  SolveStatus solve_status = SolveStatus::MaxIterations;
  double I_value = 0.0;
  double mu = 0.0;
  double residual = 0.0;
  double probe_slope = 0.0;
};

struct ScanOptions {
  double tol_mass = 0.05;  // bracket width target relative to the upper end
  double lambda_max = 64.0;
  SolveOptions solve;
  int max_expansions = 4;
  std::uint64_t seed = 1;
};

struct ScanReport {
  double bracket_lo = 0.0;  // largest mass classified subcritical
  double bracket_hi = 0.0;  // smallest mass classified supercritical
  std::vector<MassPoint> points;
  std::vector<Field> subcritical_minimizers;
};

/// Classifies a single mass for the template problem.
MassPoint classify_mass(Problem pb, const Grid& grid, double mass_value,
                        const ScanOptions& opts, Field* minimizer_out = nullptr);

/// Bisection for the critical mass of a mass-critical problem template.
ScanReport scan_mass(const Problem& pb_template, const Grid& grid,
                     double mass_lo, double mass_hi, const ScanOptions& opts);

struct SubadditivityPair {
  double total = 0.0;
  double part = 0.0;  // beta in (0, total)
};

struct SubadditivityReport {
  struct PairResult {
    double total = 0.0, part = 0.0;
    double I_total = 0.0, I_part = 0.0, I_rest = 0.0;
    double margin = 0.0;          // I(M-b) + I(b) - I(M), should exceed bound
    double required_margin = 0.0; // 3x combined residual-based bounds
    bool holds = false;
    bool skipped = false;
  };
  struct ScalingResult {
    double theta = 0.0, base_mass = 0.0;
    double I_base = 0.0, I_scaled = 0.0;
    double margin = 0.0;  // theta * I(M) - I(theta M)
    double required_margin = 0.0;
    bool holds = false;
    bool skipped = false;
  };
  std::vector<PairResult> pairs;
  std::vector<ScalingResult> scalings;
  std::vector<double> concavity_masses;
  std::vector<double> ratio_values;  // I(M)/M on the mass grid
  std::vector<bool> midpoint_concave;
  bool all_hold = false;
};

/// Solver-backed checks of strict subadditivity, strict sublinearity, and
/// midpoint concavity of I(M)/M on a mass grid.
SubadditivityReport subadditivity_check(
    const Problem& pb_template, const Grid& grid,
    const std::vector<SubadditivityPair>& pairs,
    const std::vector<double>& theta_values,
    const std::vector<double>& concavity_masses, const SolveOptions& opts,
    std::uint64_t seed = 1);

}  // namespace relgs
