#pragma once

#include <string>

#include "relgs/field.hpp"

namespace relgs {

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field snapshot, bit-exact layout:
//   magic "RGS1" (4 bytes), u32 LE dim, u32 LE points-per-axis,
//   f64 LE box half-length, then n^N f64 LE values in row-major order.
void write_snapshot(const std::string& path, const Field& field);
Field read_snapshot(const std::string& path,
                    std::size_t sample_budget = kDefaultSampleBudget);

}  // namespace relgs
