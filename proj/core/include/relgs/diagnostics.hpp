#pragma once

#include <vector>

#include "relgs/field.hpp"

namespace relgs {

struct ShellProfile {
  std::vector<double> radii;     // shell centers, bin width = grid spacing
  std::vector<double> averages;  // mean field value over each shell
  std::vector<std::size_t> counts;
};

/// Shell averages of the field over radius bins of width h up to r = L.
ShellProfile shell_profile(const Field& w);

/// Replaces each sample by the average over its exact-radius orbit; a
/// grid-sampled radial function is a fixed point to rounding.
Field radialize(const Field& w);

struct FieldDiagnostics {
  double tail_slope = 0.0;        // d log w / dr fitted over r in [L/4, L/2]
  bool tail_reliable = false;
  double monotonicity_score = 0.0;  // fraction of nonincreasing shell pairs
  double angular_defect = 0.0;      // rel L2 distance from the radialization
};

FieldDiagnostics field_diagnostics(const Field& w);

}  // namespace relgs
