#include "relgs/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace relgs {

Problem Problem::with_defaults(int dim, PotentialSpec W) {
  Problem pb;
  pb.dim = dim;
  pb.weak_q = W.default_weak_exponent(dim);
  pb.potential = std::move(W);
  return pb;
}

std::vector<std::string> Problem::validate() const {
  std::vector<std::string> bad;
  std::ostringstream ss;
  if (dim < 2) bad.push_back("dimension must satisfy N >= 2");
  if (m < 0.0) bad.push_back("mass parameter m must be nonnegative");
  if (eta < 0.0) bad.push_back("defocusing coupling eta must be nonnegative");
  if (!(sigma > 0.0)) bad.push_back("focusing coupling sigma must be positive");
  if (!(target_mass > 0.0)) bad.push_back("target mass M must be positive");
  if (!(weak_q >= dim)) {
    ss.str("");
    ss << "weak exponent q = " << weak_q << " must satisfy q >= N = " << dim;
    bad.push_back(ss.str());
  }
  const double p_lo = 2.0 + 2.0 / weak_q;
  const double p_hi = critical_trace_exponent();
  if (!(p > p_lo && p <= p_hi)) {
    ss.str("");
    ss << "exponent p = " << p << " must lie in (2 + 2/q, 2N/(N-1)] = (" << p_lo
       << ", " << p_hi << "]";
    bad.push_back(ss.str());
  }
  return bad;
}

bool Problem::mass_critical() const {
  return eta == 0.0 && weak_q == static_cast<double>(dim);
}

double kinetic_symbol(double m, double k_norm_sq) {
  return k_norm_sq / (std::sqrt(k_norm_sq + m * m) + m);
}

Hamiltonian::Hamiltonian(Problem problem, Grid grid)
    : problem_(std::move(problem)),
      grid_(std::move(grid)),
      symbol_(symbol_on_grid(problem_.potential, grid_)) {
  if (problem_.dim != grid_.dim()) {
    throw ProblemError("problem/grid dimension mismatch");
  }
  kin_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    kin_[i] = kinetic_symbol(problem_.m, grid_.freq_norm_sq(i));
    kin_max_ = std::max(kin_max_, kin_[i]);
  }
}

void Hamiltonian::check_field(const Field& w) const {
  if (!w.grid().same_as(grid_)) {
    throw ProblemError("field lives on a different grid");
  }
}

Field Hamiltonian::apply_T_minus_m(const Field& w) const {
  check_field(w);
  auto spec = w.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= kin_[i];
  return Field::from_spectrum(grid_, spec);
}

std::vector<double> Hamiltonian::hartree_potential(const Field& w) const {
  check_field(w);
  const auto& vals = w.values();
  std::vector<double> rho(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) rho[i] = vals[i] * vals[i];
  Field density(grid_, std::move(rho));
  return convolve(symbol_, density);
}

EnergyBreakdown Hamiltonian::energy(const Field& w) const {
  check_field(w);
  if (!(mass(w) > 0.0)) throw ProblemError("energy of the zero field");

  EnergyBreakdown e;
  const auto& spec = w.spectrum();
  double k = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    k += kin_[i] * std::norm(spec[i]);
  }
  e.kinetic = k / grid_.volume();

  const auto& vals = w.values();
  double pw = 0.0;
  for (double v : vals) pw += std::pow(std::abs(v), problem_.p);
  e.power = pw * grid_.cell_volume();

  const auto conv = hartree_potential(w);
  double d = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    d += conv[i] * vals[i] * vals[i];
  }
  e.hartree = d * grid_.cell_volume();

  e.total = 0.5 * e.kinetic + (problem_.eta / problem_.p) * e.power -
            0.25 * problem_.sigma * e.hartree;
  return e;
}

Field Hamiltonian::gradient(const Field& w) const {
  check_field(w);
  if (!(mass(w) > 0.0)) throw ProblemError("gradient at the zero field");

  Field lin = apply_T_minus_m(w);
  const auto conv = hartree_potential(w);
  const auto& vals = w.values();
  std::vector<double> g = lin.values();
  const double pm2 = problem_.p - 2.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = vals[i];
    if (problem_.eta != 0.0 && v != 0.0) {
      g[i] += problem_.eta * std::pow(std::abs(v), pm2) * v;
    }
    g[i] -= problem_.sigma * conv[i] * v;
  }
  return Field(grid_, std::move(g));
}

Hamiltonian::MultiplierResult Hamiltonian::lagrange_multiplier(
    const Field& w) const {
  const EnergyBreakdown e = energy(w);
  const double M = mass(w);
  MultiplierResult r;
  r.mu = (problem_.sigma * e.hartree - e.kinetic - problem_.eta * e.power) / M;
  r.mu_alt = (-2.0 * e.total -
              problem_.eta * (1.0 - 2.0 / problem_.p) * e.power +
              0.5 * problem_.sigma * e.hartree) /
             M;
  const double scale = std::max({std::abs(r.mu), std::abs(r.mu_alt), 1e-300});
  r.rel_disagreement = std::abs(r.mu - r.mu_alt) / scale;
  return r;
}

double Hamiltonian::boundary_gradient_energy(const Field& w) const {
  check_field(w);
  const auto& spec = w.spectrum();
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    s += grid_.freq_norm_sq(i) * std::norm(spec[i]);
  }
  return s / grid_.volume();
}

double Hamiltonian::massless_kinetic(const Field& w) const {
  check_field(w);
  const auto& spec = w.spectrum();
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    s += std::sqrt(grid_.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return s / grid_.volume();
}

}  // namespace relgs
