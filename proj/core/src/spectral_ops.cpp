#include "relgs/spectral_ops.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace relgs {

Field translate(const Field& w, const std::vector<double>& shift) {
  const Grid& g = w.grid();
  if (shift.size() != static_cast<std::size_t>(g.dim())) {
    throw FieldError("shift dimension mismatch");
  }
  auto spec = w.spectrum();
  const auto n = static_cast<std::size_t>(g.points_per_axis());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    std::size_t rest = i;
    double phase = 0.0;
    for (int a = g.dim() - 1; a >= 0; --a) {
      const int t = static_cast<int>(rest % n);
      rest /= n;
      phase += g.freq(t) * shift[static_cast<std::size_t>(a)];
    }
    spec[i] *= std::polar(1.0, phase);
  }
  return Field::from_spectrum(g, spec);
}

std::vector<double> density_barycenter(const Field& w) {
  const Grid& g = w.grid();
  const double L = g.box_half_length();
  const auto& vals = w.values();
  const auto n = static_cast<std::size_t>(g.points_per_axis());

  std::vector<std::complex<double>> mean(static_cast<std::size_t>(g.dim()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double rho = vals[i] * vals[i];
    std::size_t rest = i;
    for (int a = g.dim() - 1; a >= 0; --a) {
      const int t = static_cast<int>(rest % n);
      rest /= n;
      const double theta = std::numbers::pi * g.coord(t) / L;
      mean[static_cast<std::size_t>(a)] += rho * std::polar(1.0, theta);
    }
  }
  std::vector<double> center(static_cast<std::size_t>(g.dim()), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const auto m = mean[static_cast<std::size_t>(a)];
    if (std::abs(m) > 0.0) {
      center[static_cast<std::size_t>(a)] = L * std::arg(m) / std::numbers::pi;
    }
  }
  return center;
}

Field recenter(const Field& w) { return translate(w, density_barycenter(w)); }

Field dilate(const Field& w, double lambda) {
  if (!(lambda > 0.0)) throw FieldError("dilation factor must be positive");
  const Grid& g = w.grid();
  const auto n = static_cast<std::size_t>(g.points_per_axis());
  const auto& spec = w.spectrum();

  // Per-axis evaluation matrix E[j][t] = e^{i k_t * lambda * y_j} / per-axis
  // normalization; applying it along every axis evaluates the trigonometric
  // interpolant of w at the stretched points lambda * y.
  std::vector<std::complex<double>> E(n * n);
  const double inv_axis = 1.0 / (2.0 * g.box_half_length());
  for (std::size_t j = 0; j < n; ++j) {
    const double y = lambda * g.coord(static_cast<int>(j));
    for (std::size_t t = 0; t < n; ++t) {
      E[j * n + t] =
          std::polar(inv_axis, g.freq(static_cast<int>(t)) * y);
    }
  }

  std::vector<std::complex<double>> buf(spec.begin(), spec.end());
  std::vector<std::complex<double>> next(buf.size());
  const std::size_t total = buf.size();
  // Transform one axis at a time; axis `a` has stride n^{dim-1-a}.
  for (int a = g.dim() - 1; a >= 0; --a) {
    std::size_t stride = 1;
    for (int b = g.dim() - 1; b > a; --b) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t j = 0; j < n; ++j) {
          std::complex<double> acc = 0.0;
          const std::complex<double>* row = &E[j * n];
          for (std::size_t t = 0; t < n; ++t) {
            acc += row[t] * buf[base + off + t * stride];
          }
          next[base + off + j * stride] = acc;
        }
      }
    }
    std::swap(buf, next);
  }

  const double amp = std::pow(lambda, 0.5 * g.dim());
  std::vector<double> out(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = amp * buf[i].real();
  return Field(g, std::move(out));
}

}  // namespace relgs
