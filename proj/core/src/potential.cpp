#include "relgs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace relgs {
namespace {

double interp_tabulated(const TabulatedRadial& t, double r) {
  const auto& xs = t.radii;
  const auto& ys = t.values;
  if (r <= xs.front()) return ys.front();
  if (r >= xs.back()) return 0.0;
  const auto it = std::upper_bound(xs.begin(), xs.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double w = (r - x0) / (x1 - x0);
  return ys[i - 1] * (1.0 - w) + ys[i] * w;
}

/// integral_0^R W(r) r^{N-1} dr by composite Simpson under the quadratic
/// grading r = R s^2, which absorbs the r^{-alpha} singularity for alpha <= 1.
double radial_integral(const PotentialSpec& W, int dim, double R,
                       int panels = 2000) {
  if (R <= 0.0) return 0.0;
  const auto f = [&](double s) {
    const double r = R * s * s;
    if (r == 0.0) return 0.0;
    return W.evaluate(r) * std::pow(r, dim - 1) * 2.0 * R * s;
  };
  const double h = 1.0 / panels;
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

}  // namespace

PotentialSpec::PotentialSpec(Variant kind) : kind_(std::move(kind)) {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    if (!(p->alpha > 0.0)) throw PotentialError("power-law exponent must be positive");
  } else if (const auto* y = std::get_if<Yukawa>(&kind_)) {
    if (!(y->mu > 0.0)) throw PotentialError("screening rate must be positive");
  } else {
    const auto& t = std::get<TabulatedRadial>(kind_);
    if (t.radii.size() < 2 || t.radii.size() != t.values.size()) {
      throw PotentialError("tabulated kernel needs >= 2 (radius, value) rows");
    }
    for (std::size_t i = 0; i < t.radii.size(); ++i) {
      if (i > 0 && !(t.radii[i] > t.radii[i - 1])) {
        throw PotentialError("tabulated radii must be strictly increasing");
      }
      if (t.values[i] < 0.0) {
        throw PotentialError("tabulated kernel values must be nonnegative");
      }
    }
  }
}

bool PotentialSpec::is_zero() const {
  if (const auto* t = std::get_if<TabulatedRadial>(&kind_)) {
    return std::all_of(t->values.begin(), t->values.end(),
                       [](double v) { return v == 0.0; });
  }
  return false;
}

double PotentialSpec::evaluate(double r) const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    return std::pow(r, -p->alpha);
  }
  if (const auto* y = std::get_if<Yukawa>(&kind_)) {
    return std::exp(-y->mu * r) / r;
  }
  return interp_tabulated(std::get<TabulatedRadial>(kind_), r);
}

double PotentialSpec::default_weak_exponent(int dim) const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return dim / p->alpha;
  if (std::holds_alternative<Yukawa>(kind_)) return static_cast<double>(dim);
  return 2.0 * dim;
}

std::optional<double> PotentialSpec::homogeneity_alpha() const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return p->alpha;
  return std::nullopt;
}

std::string PotentialSpec::describe() const {
  std::ostringstream ss;
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    ss << "power-law alpha=" << p->alpha;
  } else if (const auto* y = std::get_if<Yukawa>(&kind_)) {
    ss << "yukawa mu=" << y->mu;
  } else {
    ss << "tabulated (" << std::get<TabulatedRadial>(kind_).radii.size()
       << " rows)";
  }
  return ss.str();
}

double unit_sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double unit_ball_volume(int dim) {
  return std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double power_law_fourier_constant(int dim, double alpha) {
  return std::pow(std::numbers::pi, dim / 2.0) * std::pow(2.0, dim - alpha) *
         std::tgamma((dim - alpha) / 2.0) / std::tgamma(alpha / 2.0);
}

PotentialSymbol symbol_on_grid(const PotentialSpec& potential, const Grid& grid) {
  PotentialSymbol sym;
  sym.grid = grid;
  sym.values.resize(grid.size());

  if (const auto* p = std::get_if<PowerLaw>(&potential.kind())) {
    const double alpha = p->alpha;
    const int N = grid.dim();
    if (!(alpha < N)) {
      throw PotentialError("power-law exponent must be below the dimension");
    }
    const double c = power_law_fourier_constant(N, alpha);
    const double L = grid.box_half_length();
    // k = 0: kernel truncated at the box scale; any finite choice shifts the
    // energy by a mass-only constant, and this one treats the box as isolated.
    const double zero_mode =
        unit_sphere_area(N) * std::pow(L, N - alpha) / (N - alpha);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double k2 = grid.freq_norm_sq(i);
      sym.values[i] =
          k2 == 0.0 ? zero_mode : c * std::pow(k2, 0.5 * (alpha - N));
    }
    sym.zero_mode = zero_mode;
    sym.zero_mode_convention = "truncated-kernel";
    return sym;
  }

  if (const auto* y = std::get_if<Yukawa>(&potential.kind())) {
    if (grid.dim() != 3) {
      throw PotentialError("screened 1/r kernel is only defined in 3D");
    }
    const double mu2 = y->mu * y->mu;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sym.values[i] = 4.0 * std::numbers::pi / (grid.freq_norm_sq(i) + mu2);
    }
    sym.zero_mode = 4.0 * std::numbers::pi / mu2;
    sym.zero_mode_convention = "closed-form";
    return sym;
  }

  // Tabulated kernel: sample W(|y|) on the grid and take the discrete
  // transform; the periodic images realize the box-truncated convolution.
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::sqrt(grid.coord_norm_sq(i));
    samples[i] = r == 0.0 ? potential.evaluate(grid.spacing() * 1e-3)
                          : potential.evaluate(r);
  }
  auto spec = forward_transform(grid, samples);
  for (std::size_t i = 0; i < grid.size(); ++i) sym.values[i] = spec[i].real();
  sym.zero_mode = sym.values[0];
  sym.zero_mode_convention = "sampled-kernel-transform";
  return sym;
}

std::vector<double> convolve(const PotentialSymbol& symbol,
                             const Field& density) {
  if (!symbol.grid.same_as(density.grid())) {
    throw PotentialError("symbol/density grid mismatch");
  }
  auto spec = density.spectrum();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= symbol.values[i];
  return inverse_transform(density.grid(), spec);
}

WeakNormResult weak_lq_norm(const PotentialSpec& potential, double q, int dim,
                            double radius_hint) {
  if (!(q > 1.0)) throw PotentialError("weak norm requires q > 1");
  const double r_conj = q / (q - 1.0);
  const double sphere = unit_sphere_area(dim);
  const double ball = unit_ball_volume(dim);

  const auto objective = [&](double R) {
    const double integral = sphere * radial_integral(potential, dim, R);
    return std::pow(ball * std::pow(R, dim), -1.0 / r_conj) * integral;
  };

  WeakNormResult res;
  if (potential.is_zero()) return res;

  if (const auto* t = std::get_if<TabulatedRadial>(&potential.kind())) {
    for (std::size_t i = 1; i < t->values.size(); ++i) {
      if (t->values[i] > t->values[i - 1]) {
        res.lower_bound_only = true;  // supremum over balls only
        break;
      }
    }
  }

  // Log-spaced scan followed by a golden-section refinement.
  double best = 0.0, best_R = radius_hint;
  const double lo = radius_hint * 1e-3, hi = radius_hint * 1e3;
  const int scan = 120;
  for (int i = 0; i <= scan; ++i) {
    const double R = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
    const double v = objective(R);
    if (v > best) {
      best = v;
      best_R = R;
    }
  }
  double a = best_R / std::pow(hi / lo, 1.0 / scan);
  double b = best_R * std::pow(hi / lo, 1.0 / scan);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(x1);
    }
  }
  res.value = std::max(best, std::max(f1, f2));
  res.argmax_radius = f1 > f2 ? x1 : x2;
  return res;
}

ScalingHypothesisReport check_scaling_hypothesis(
    const PotentialSpec& potential, double alpha,
    const std::vector<double>& lambda_samples,
    const std::vector<double>& radius_samples) {
  if (lambda_samples.empty() || radius_samples.empty()) {
    throw PotentialError("scaling-hypothesis check needs nonempty samples");
  }
  ScalingHypothesisReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (double lambda : lambda_samples) {
    for (double r : radius_samples) {
      const double lhs = potential.evaluate(r / lambda);
      const double rhs = std::pow(lambda, alpha) * potential.evaluate(r);
      const double scale = std::max(potential.evaluate(r), 1e-300);
      const double margin = (lhs - rhs) / scale;
      ++rep.samples;
      if (margin < -1e-13) ++rep.violations;
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_lambda = lambda;
        rep.worst_radius = r;
      }
    }
  }
  return rep;
}

PotentialSpec load_tabulated_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PotentialError("cannot open kernel table: " + path);
  std::vector<double> radii, values;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double r, v;
    if (!(ss >> r >> v)) {
      throw PotentialError("malformed kernel table row: " + line);
    }
    radii.push_back(r);
    values.push_back(v);
  }
  return PotentialSpec::tabulated(std::move(radii), std::move(values));
}

}  // namespace relgs
