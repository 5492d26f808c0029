#include "relgs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace relgs {
namespace {

double hartree_D(const PotentialSymbol& symbol, const Field& w) {
  const Grid& g = w.grid();
  const auto& vals = w.values();
  std::vector<double> rho(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) rho[i] = vals[i] * vals[i];
  const std::vector<double> conv = convolve(symbol, Field(g, std::move(rho)));
  double D = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    D += conv[i] * vals[i] * vals[i];
  }
  return D * g.cell_volume();
}

double kinetic_K(double m, const Field& w) {
  const Grid& g = w.grid();
  const auto& spec = w.spectrum();
  double K = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    K += kinetic_symbol(m, g.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return K / g.volume();
}

Grid refined(const Grid& g) {
  return make_grid(g.dim(), g.box_half_length(), 2 * g.points_per_axis());
}

/// Margin of a two-resolution constant fit: positive when the coarse and fine
/// fits agree within a factor of two.
double stability_margin(double c_coarse, double c_fine) {
  if (!(c_coarse > 0.0) || !(c_fine > 0.0) || !std::isfinite(c_coarse) ||
      !std::isfinite(c_fine)) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(2.0) - std::abs(std::log(c_fine / c_coarse));
}

}  // namespace

std::string to_json(const VerificationReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"check\":\"" << rep.check << "\",\"n_instances\":" << rep.n_instances
     << ",\"worst_margin\":" << rep.worst_margin
     << ",\"fitted_C\":" << rep.fitted_C
     << ",\"pass\":" << (rep.pass ? "true" : "false");
  if (!rep.note.empty()) os << ",\"note\":\"" << rep.note << "\"";
  os << "}";
  return os.str();
}

Field realize(const FieldSpec& spec, const Grid& grid) {
  std::vector<double> vals(grid.size(), 0.0);
  std::vector<int> idx(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, idx.data());
    for (const BumpSpec& b : spec) {
      if (b.center.size() != static_cast<std::size_t>(grid.dim())) {
        throw VerifyError("bump center dimension mismatch");
      }
      double r2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double dy = grid.coord(idx[static_cast<std::size_t>(a)]) -
                          b.center[static_cast<std::size_t>(a)];
        r2 += dy * dy;
      }
      vals[i] += b.amplitude * std::exp(-r2 / (2.0 * b.width * b.width));
    }
  }
  return Field(grid, std::move(vals));
}

std::vector<FieldSpec> make_corpus_specs(int dim, double box_half_length,
                                         std::size_t count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double L = box_half_length;
  std::vector<FieldSpec> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FieldSpec spec;
    const int bumps = 1 + static_cast<int>(unit(rng) * 3);
    for (int b = 0; b < bumps; ++b) {
      BumpSpec bump;
      bump.center.resize(static_cast<std::size_t>(dim));
      for (auto& c : bump.center) c = (unit(rng) * 2.0 - 1.0) * L / 3.0;
      bump.width = L / 10.0 + unit(rng) * L / 10.0;
      bump.amplitude = 0.3 + unit(rng);
      spec.push_back(std::move(bump));
    }
    corpus.push_back(std::move(spec));
  }
  return corpus;
}

VerificationReport weak_young_check(const PotentialSpec& W, double q, double p,
                                    double r, const Grid& grid,
                                    const std::vector<FieldSpec>& corpus) {
  if (std::abs(1.0 / q + 1.0 / p + 1.0 / r - 2.0) > 1e-12) {
    throw VerifyError("weak Young needs 1/q + 1/p + 1/r = 2");
  }
  if (!(q > 1.0 && p > 1.0 && r > 1.0)) {
    throw VerifyError("weak Young exponents must lie in (1, inf)");
  }

  const double wn = weak_lq_norm(W, q, grid.dim()).value;
  const auto fit = [&](const Grid& g) {
    const PotentialSymbol symbol = symbol_on_grid(W, g);
    double c = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const Field f = realize(corpus[i], g);
      const Field h = realize(corpus[(i + 1) % corpus.size()], g);
      const std::vector<double> conv = convolve(symbol, h);
      double lhs = 0.0;
      const auto& fv = f.values();
      for (std::size_t j = 0; j < fv.size(); ++j) lhs += fv[j] * conv[j];
      lhs *= g.cell_volume();
      const double rhs = wn * lp_norm(f, p) * lp_norm(h, r);
      if (rhs > 0.0) c = std::max(c, lhs / rhs);
    }
    return c;
  };

  const double c_coarse = fit(grid);
  const double c_fine = fit(refined(grid));

  VerificationReport rep;
  rep.check = "weak-young";
  rep.n_instances = corpus.size();
  rep.fitted_C = c_fine;
  rep.worst_margin = stability_margin(c_coarse, c_fine);
  rep.pass = rep.worst_margin >= -1e-12;
  rep.note = "margin = ln 2 minus |ln| of the coarse/fine fitted-C ratio";
  return rep;
}

ConvEstimateReport conv_estimate_check(const Problem& pb, const Grid& grid,
                                       const std::vector<FieldSpec>& corpus) {
  const double q = pb.weak_q;
  const double a = 2.0 * pb.p / (q * (pb.p - 2.0));
  if (!(a > 0.0 && a < 4.0)) {
    throw VerifyError("convolution-estimate exponent out of range");
  }
  const double wn = weak_lq_norm(pb.potential, q, grid.dim()).value;
  const double sharp = pb.critical_trace_exponent();
  const bool critical = std::abs(q - grid.dim()) < 1e-12;

  const auto fit = [&](const Grid& g, bool crit) {
    const PotentialSymbol symbol = symbol_on_grid(pb.potential, g);
    double c = 0.0;
    for (const FieldSpec& spec : corpus) {
      const Field w = realize(spec, g);
      const double D = hartree_D(symbol, w);
      double rhs;
      if (crit) {
        rhs = mass(w) * lp_norm(w, sharp) * lp_norm(w, sharp);
      } else {
        rhs = wn * std::pow(lp_norm(w, 2.0), 4.0 - a) *
              std::pow(lp_norm(w, pb.p), a);
      }
      if (rhs > 0.0) c = std::max(c, D / rhs);
    }
    return c;
  };

  ConvEstimateReport out;
  const Grid fine = refined(grid);

  const double gc = fit(grid, false);
  const double gf = fit(fine, false);
  out.general.check = "conv-estimate";
  out.general.n_instances = corpus.size();
  out.general.fitted_C = gf;
  out.general.worst_margin = stability_margin(gc, gf);
  out.general.pass = out.general.worst_margin >= -1e-12;

  if (critical) {
    const double cc = fit(grid, true);
    const double cf = fit(fine, true);
    out.critical.check = "conv-estimate-critical";
    out.critical.n_instances = corpus.size();
    out.critical.fitted_C = cf;
    out.critical.worst_margin = stability_margin(cc, cf);
    out.critical.pass = out.critical.worst_margin >= -1e-12;
    out.has_critical = true;
  }
  return out;
}

CoercivityReport coercivity_threshold(const Problem& pb, const Grid& grid,
                                      const std::vector<FieldSpec>& corpus,
                                      const std::vector<Field>& extra) {
  if (pb.eta != 0.0) {
    throw VerifyError("coercivity threshold is defined for eta = 0");
  }
  const double q = pb.weak_q;
  const int N = grid.dim();
  const double sharp = pb.critical_trace_exponent();

  CoercivityReport rep;
  rep.weak_norm = weak_lq_norm(pb.potential, q, N).value;

  const PotentialSymbol symbol = symbol_on_grid(pb.potential, grid);
  std::vector<Field> fields;
  for (const FieldSpec& spec : corpus) fields.push_back(realize(spec, grid));
  for (const Field& f : extra) {
    if (!f.grid().same_as(grid)) {
      throw VerifyError("extra coercivity field on a different grid");
    }
    fields.push_back(f);
  }
  rep.n_instances = fields.size();

  for (const Field& w : fields) {
    const double M = mass(w);
    if (!(M > 0.0)) continue;
    const double D = hartree_D(symbol, w);
    const double s2 = lp_norm(w, sharp) * lp_norm(w, sharp);
    const double h1 = kinetic_K(pb.m, w) + pb.m * M;
    if (s2 > 0.0) rep.fitted_C = std::max(rep.fitted_C, D / (rep.weak_norm * M * s2));
    if (h1 > 0.0) rep.trace_constant_sq = std::max(rep.trace_constant_sq, s2 / h1);
  }

  if (q > static_cast<double>(N) + 1e-12) {
    rep.always_coercive = true;
    rep.threshold_mass = std::numeric_limits<double>::infinity();
    rep.coercive_at_target = true;
    return rep;
  }
  const double denom =
      pb.sigma * rep.fitted_C * rep.weak_norm * rep.trace_constant_sq;
  rep.threshold_mass = denom > 0.0
                           ? 2.0 / denom
                           : std::numeric_limits<double>::infinity();
  rep.coercive_at_target = pb.target_mass < rep.threshold_mass;
  return rep;
}

Field rearrange(const Field& f) {
  const Grid& g = f.grid();
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ra = g.coord_norm_sq(a);
    const double rb = g.coord_norm_sq(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  std::vector<double> sorted(f.values().size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    sorted[i] = std::abs(f.values()[i]);
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  std::vector<double> out(sorted.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    out[order[rank]] = sorted[rank];
  }
  return Field(g, std::move(out));
}

VerificationReport riesz_check(const PotentialSpec& W, const Grid& grid,
                               const std::vector<Field>& corpus) {
  const PotentialSymbol symbol = symbol_on_grid(W, grid);
  VerificationReport rep;
  rep.check = "riesz-rearrangement";
  rep.n_instances = corpus.size();
  rep.worst_margin = std::numeric_limits<double>::infinity();
  // The cell rearrangement ignores the periodic wrap, so the inequality only
  // holds up to a discretization defect that shrinks under refinement.
  constexpr double tol = 1e-3;
  for (const Field& w : corpus) {
    if (!w.grid().same_as(grid)) {
      throw VerifyError("riesz corpus field on a different grid");
    }
    const double D = hartree_D(symbol, w);
    const double Dstar = hartree_D(symbol, rearrange(w));
    const double scale = std::max(std::abs(D), 1e-300);
    rep.worst_margin = std::min(rep.worst_margin, (Dstar - D) / scale + tol);
  }
  if (corpus.empty()) rep.worst_margin = 0.0;
  rep.pass = rep.worst_margin >= 0.0;
  rep.note = "margin = min (D(w*) - D(w))/|D(w)| + 1e-3";
  return rep;
}

}  // namespace relgs
