#pragma once

#include "relgs/field.hpp"

namespace relgs {

struct HalfspaceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Harmonic-type extension of a boundary field w to {x > 0}:
///   v(x, .) = inverse transform of e^{-x sqrt(m^2 + |xi|^2)} w_hat(xi).
/// The x-dependence stays analytic per mode; nothing is stored on an
/// (N+1)-dimensional grid.
class ExtensionField {
 public:
  ExtensionField(Field boundary, double m);

  const Field& boundary() const { return boundary_; }
  double m() const { return m_; }

  /// v(x, .) sampled on the boundary grid, x >= 0.
  Field slice(double x) const;

  /// Integral over the half space of |grad v|^2 + m^2 v^2, mode-wise in
  /// closed form: sum sqrt(m^2 + |xi|^2) |w_hat|^2 / (2L)^N.
  double h1_sq() const;

  /// h1_sq minus m * mass(boundary); equals the kinetic term of the boundary
  /// energy and is nonnegative.
  double quadratic_part() const;

  /// Integral over the half space of (d v/d x)^2, mode-wise in closed form.
  double dx_sq() const;

  /// L^s norm of v over the half space. Closed form for s = 2, otherwise
  /// quadrature in x with the given node count.
  double halfspace_lp_norm(double s, int quad_nodes = 64) const;

 private:
  Field boundary_;
  double m_;
};

ExtensionField extend(const Field& w, double m);

/// T w = inverse transform of sqrt(m^2 + |xi|^2) w_hat; T^2 = -Lap + m^2.
Field apply_T(const Field& w, double m);

/// H^1 energy of the separable competitor e^{-c x} w(y):
/// (int |grad_y w|^2 + (c^2 + m^2) mass(w)) / (2c). The spectral extension
/// minimizes this over every c > 0, mode by mode.
double competitor_h1_sq(const Field& w, double m, double c);

struct TraceInequalityReport {
  double lhs = 0.0;          // int |trace v|^p
  double rhs = 0.0;          // p * ||v||_{2(p-1)}^{p-1} * ||dv/dx||_2
  double margin = 0.0;       // (rhs - lhs) / max(rhs, tiny)
  bool holds = false;        // lhs <= rhs (1 + tol)
  bool quadrature_ok = true; // x-quadrature self-consistency
};

/// Checks int |trace v|^p <= p ||v||_{2(p-1)}^{p-1} ||dv/dx||_2 on the
/// spectral extension of w, with tolerance tol on the relative margin.
TraceInequalityReport trace_inequality_check(const Field& w, double m, double p,
                                             double tol = 1e-6);

}  // namespace relgs
