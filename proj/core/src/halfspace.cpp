#include "relgs/halfspace.hpp"

#include <cmath>

#include "relgs/hamiltonian.hpp"

namespace relgs {
namespace {

// Gauss-Legendre nodes/weights on (0, 1), composed on the fly from the
// 16-point rule on panels.
struct GL16 {
  static constexpr int n = 16;
  // Abscissas/weights for [-1, 1].
  static const double x[16];
  static const double w[16];
};
const double GL16::x[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double GL16::w[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

}  // namespace

ExtensionField::ExtensionField(Field boundary, double m)
    : boundary_(std::move(boundary)), m_(m) {
  if (!(m > 0.0)) {
    throw HalfspaceError(
        "extension requires m > 0 (the zero-mode decay rate degenerates)");
  }
}

ExtensionField extend(const Field& w, double m) { return ExtensionField(w, m); }

Field ExtensionField::slice(double x) const {
  if (x < 0.0) throw HalfspaceError("slice position must satisfy x >= 0");
  const Grid& g = boundary_.grid();
  auto spec = boundary_.spectrum();
  const double m2 = m_ * m_;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec[i] *= std::exp(-x * std::sqrt(m2 + g.freq_norm_sq(i)));
  }
  return Field::from_spectrum(g, spec);
}

double ExtensionField::h1_sq() const {
  const Grid& g = boundary_.grid();
  const auto& spec = boundary_.spectrum();
  const double m2 = m_ * m_;
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    s += std::sqrt(m2 + g.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return s / g.volume();
}

double ExtensionField::quadratic_part() const {
  const Grid& g = boundary_.grid();
  const auto& spec = boundary_.spectrum();
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    s += kinetic_symbol(m_, g.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return s / g.volume();
}

double ExtensionField::dx_sq() const {
  // (d/dx) v has per-mode amplitude -s(xi) e^{-x s(xi)} w_hat;
  // int_0^inf s^2 e^{-2 s x} dx = s / 2.
  const Grid& g = boundary_.grid();
  const auto& spec = boundary_.spectrum();
  const double m2 = m_ * m_;
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    s += 0.5 * std::sqrt(m2 + g.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return s / g.volume();
}

double ExtensionField::halfspace_lp_norm(double s, int quad_nodes) const {
  if (!(s >= 1.0)) throw HalfspaceError("Lp exponent must satisfy s >= 1");
  const Grid& g = boundary_.grid();
  if (s == 2.0) {
    const auto& spec = boundary_.spectrum();
    const double m2 = m_ * m_;
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      acc += 0.5 / std::sqrt(m2 + g.freq_norm_sq(i)) * std::norm(spec[i]);
    }
    return std::sqrt(acc / g.volume());
  }

  // int_0^inf G(x) dx with G(x) = h^N sum_y |v(x, y)|^s, mapped to (0, 1)
  // via x = -ln(u)/beta with beta = s*m/2 so the integrand stays mild at 0.
  const double beta = 0.5 * s * m_;
  const int panels = std::max(1, quad_nodes / GL16::n);
  double acc = 0.0;
  for (int pnl = 0; pnl < panels; ++pnl) {
    const double a = static_cast<double>(pnl) / panels;
    const double b = static_cast<double>(pnl + 1) / panels;
    for (int i = 0; i < GL16::n; ++i) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * GL16::x[i];
      const double x = -std::log(u) / beta;
      const Field vx = slice(x);
      double gval = 0.0;
      for (double v : vx.values()) gval += std::pow(std::abs(v), s);
      gval *= g.cell_volume();
      acc += 0.5 * (b - a) * GL16::w[i] * gval / (beta * u);
    }
  }
  return std::pow(acc, 1.0 / s);
}

Field apply_T(const Field& w, double m) {
  const Grid& g = w.grid();
  auto spec = w.spectrum();
  const double m2 = m * m;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec[i] *= std::sqrt(m2 + g.freq_norm_sq(i));
  }
  return Field::from_spectrum(g, spec);
}

double competitor_h1_sq(const Field& w, double m, double c) {
  if (!(c > 0.0)) throw HalfspaceError("competitor decay rate must be positive");
  const Grid& g = w.grid();
  const auto& spec = w.spectrum();
  double grad_y = 0.0, m2norm = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    grad_y += g.freq_norm_sq(i) * std::norm(spec[i]);
    m2norm += std::norm(spec[i]);
  }
  grad_y /= g.volume();
  m2norm /= g.volume();  // = mass(w) by Parseval
  return (grad_y + (c * c + m * m) * m2norm) / (2.0 * c);
}

TraceInequalityReport trace_inequality_check(const Field& w, double m, double p,
                                             double tol) {
  if (!(p >= 2.0)) throw HalfspaceError("trace inequality needs p >= 2");
  TraceInequalityReport rep;
  const ExtensionField v = extend(w, m);

  rep.lhs = std::pow(lp_norm(w, p), p);
  const double norm_a = v.halfspace_lp_norm(2.0 * (p - 1.0), 64);
  const double dx = std::sqrt(v.dx_sq());
  rep.rhs = p * std::pow(norm_a, p - 1.0) * dx;

  if (p != 2.0) {
    const double check = v.halfspace_lp_norm(2.0 * (p - 1.0), 128);
    const double rel =
        std::abs(check - norm_a) / std::max(std::abs(check), 1e-300);
    rep.quadrature_ok = rel < 1e-8;
  }

  rep.margin = (rep.rhs - rep.lhs) / std::max(rep.rhs, 1e-300);
  rep.holds = rep.lhs <= rep.rhs * (1.0 + tol);
  return rep;
}

}  // namespace relgs
