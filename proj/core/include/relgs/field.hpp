#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "relgs/grid.hpp"
#include "relgs/transform.hpp"

namespace relgs {

struct FieldError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Real-valued samples of a function on a Grid. Immutable after construction;
/// the spectrum (pinned convention) is computed on first use and cached.
class Field {
 public:
  Field() = default;
  Field(Grid grid, std::vector<double> values);

  static Field from_spectrum(const Grid& grid,
                             const std::vector<std::complex<double>>& spectrum);

  const Grid& grid() const { return data_->grid; }
  const std::vector<double>& values() const { return data_->values; }
  const std::vector<std::complex<double>>& spectrum() const;

  bool empty() const { return !data_; }

 private:
  struct Data {
    Grid grid;
    std::vector<double> values;
    mutable std::once_flag spectrum_once;
    mutable std::vector<std::complex<double>> spectrum;
  };
  std::shared_ptr<const Data> data_;
};

double mass(const Field& f);
double lp_norm(const Field& f, double p);
double inner(const Field& f, const Field& g);
Field rescale_mass(const Field& f, double target_mass);

Field map_values(const Field& f, const std::vector<double>& new_values);

}  // namespace relgs
