#include "relgs/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relgs {

Field::Field(Grid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw FieldError("value count does not match grid size");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw FieldError("field values must be finite");
  }
  auto data = std::make_shared<Data>();
  data->grid = std::move(grid);
  data->values = std::move(values);
  data_ = std::move(data);
}

Field Field::from_spectrum(const Grid& grid,
                           const std::vector<std::complex<double>>& spectrum) {
  if (spectrum.size() != grid.size()) {
    throw FieldError("spectrum size does not match grid size");
  }
  return Field(grid, inverse_transform(grid, spectrum));
}

const std::vector<std::complex<double>>& Field::spectrum() const {
  const Data& d = *data_;
  std::call_once(d.spectrum_once,
                 [&d] { d.spectrum = forward_transform(d.grid, d.values); });
  return d.spectrum;
}

double mass(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().cell_volume();
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw FieldError("lp_norm requires p >= 1");
  double s = 0.0;
  if (p == 2.0) {
    for (double v : f.values()) s += v * v;
  } else if (p == 1.0) {
    for (double v : f.values()) s += std::abs(v);
  } else {
    for (double v : f.values()) s += std::pow(std::abs(v), p);
  }
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double inner(const Field& f, const Field& g) {
  if (!f.grid().same_as(g.grid())) throw FieldError("grid mismatch");
  double s = 0.0;
  const auto& a = f.values();
  const auto& b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * f.grid().cell_volume();
}

Field rescale_mass(const Field& f, double target_mass) {
  if (!(target_mass > 0.0)) throw FieldError("target mass must be positive");
  const double m = mass(f);
  if (m <= 0.0) throw FieldError("cannot rescale the zero field");
  const double c = std::sqrt(target_mass / m);
  std::vector<double> vals = f.values();
  for (double& v : vals) v *= c;
  return Field(f.grid(), std::move(vals));
}

Field map_values(const Field& f, const std::vector<double>& new_values) {
  return Field(f.grid(), new_values);
}

}  // namespace relgs
