#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relgs/hamiltonian.hpp"

namespace relgs {

struct VerifyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerificationReport {
  std::string check;
  std::size_t n_instances = 0;
  double worst_margin = 0.0;  // signed, positive = satisfied
  double fitted_C = 0.0;
  bool pass = false;
  std::string note;
};

std::string to_json(const VerificationReport& rep);

/// Analytic corpus member: a sum of Gaussian bumps. Grid-independent, so the
/// same corpus can be realized at several resolutions for refinement studies.
struct BumpSpec {
  std::vector<double> center;
  double width = 1.0;
  double amplitude = 1.0;
};

using FieldSpec = std::vector<BumpSpec>;

Field realize(const FieldSpec& spec, const Grid& grid);

/// Deterministic corpus of nonnegative bump sums inside [-L/3, L/3]^N with
/// widths resolvable at n >= 32.
std::vector<FieldSpec> make_corpus_specs(int dim, double box_half_length,
                                         std::size_t count, std::uint64_t seed);

/// Triple-product inequality: int f (W * h) <= C |W|_{q,w} |f|_p |h|_r with
/// 1/q + 1/p + 1/r = 2. Fits C over (f, h) corpus pairs on the given grid and
/// on its 2x refinement; passes when the fit is refinement-stable within 2x.
VerificationReport weak_young_check(const PotentialSpec& W, double q, double p,
                                    double r, const Grid& grid,
                                    const std::vector<FieldSpec>& corpus);

/// D(w) <= C |W|_{q,w} |w|_2^{4 - 2p/(q(p-2))} |w|_p^{2p/(q(p-2))}; in the
/// critical case q = N also D(w) <= C_crit M |w|_{2N/(N-1)}^2.
struct ConvEstimateReport {
  VerificationReport general;
  VerificationReport critical;  // populated only when q = N
  bool has_critical = false;
};

ConvEstimateReport conv_estimate_check(const Problem& pb, const Grid& grid,
                                       const std::vector<FieldSpec>& corpus);

struct CoercivityReport {
  double fitted_C = 0.0;           // D <= C |W|_{q,w} M |w|_{2#}^2 over corpus
  double trace_constant_sq = 0.0;  // sup |w|_{2#}^2 / (K + m M)
  double weak_norm = 0.0;
  double threshold_mass = 0.0;     // coercive iff M < threshold; inf if q > N
  bool always_coercive = false;
  bool coercive_at_target = false;
  std::size_t n_instances = 0;
};

/// Smallness condition on |W|_{N,w} M for the energy lower bound to be
/// coercive. Requires eta = 0. `extra` lets callers feed solver output (for
/// instance scan minimizers) into the constant fit alongside the corpus.
CoercivityReport coercivity_threshold(const Problem& pb, const Grid& grid,
                                      const std::vector<FieldSpec>& corpus,
                                      const std::vector<Field>& extra = {});

/// Symmetric decreasing rearrangement: values sorted descending onto cells
/// sorted by distance from the origin (ties by flat index). Takes |f| first.
Field rearrange(const Field& f);

/// D(rearrange(w)) >= D(w) - 1e-6 |D(w)| over the corpus, W radial
/// nonincreasing.
VerificationReport riesz_check(const PotentialSpec& W, const Grid& grid,
                               const std::vector<Field>& corpus);

}  // namespace relgs
