// Property-based acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relgs/diagnostics.hpp"
#include "relgs/halfspace.hpp"
#include "relgs/minimizer.hpp"
#include "relgs/runner.hpp"
#include "relgs/snapshot.hpp"
#include "relgs/spectral_ops.hpp"
#include "relgs/verify.hpp"

using namespace relgs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Field random_field(const Grid& g, std::uint64_t seed, double offset = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = offset + gauss(rng);
  return Field(g, std::move(v));
}

Problem binding_2d(double mass_value = 1.0) {
  Problem pb;
  pb.dim = 2;
  pb.m = 1.0;
  pb.eta = 0.1;
  pb.sigma = 1.5;
  pb.p = 3.0;
  pb.potential = PotentialSpec::power_law(0.5);
  pb.weak_q = 4.0;
  pb.target_mass = mass_value;
  return pb;
}

Problem newton_3d(double mass_value) {
  Problem pb;
  pb.dim = 3;
  pb.m = 1.0;
  pb.eta = 0.0;
  pb.sigma = 1.0;
  pb.p = 3.0;
  pb.potential = PotentialSpec::power_law(1.0);
  pb.weak_q = 3.0;
  pb.target_mass = mass_value;
  return pb;
}

bool report_line(int idx, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx,
              detail.c_str());
  std::fflush(stdout);
  return pass;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// 1. Spectral identities on band-limited fields.
bool criterion1() {
  const auto t0 = Clock::now();
  const Grid g = make_grid(2, 8.0, 64);
  const double m = 1.3;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Field w = random_field(g, seed);
    const Field t2 = apply_T(apply_T(w, m), m);
    auto spec = w.spectrum();
    for (std::size_t i = 0; i < spec.size(); ++i) {
      spec[i] *= g.freq_norm_sq(i) + m * m;
    }
    const Field ref = Field::from_spectrum(g, spec);
    const double scale = lp_norm(ref, 2.0);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = t2.values()[i] - ref.values()[i];
      diff2 += d * d;
    }
    worst = std::max(worst, std::sqrt(diff2 * g.cell_volume()) / scale);
  }

  // Kinetic-symbol eigenrelation on single modes.
  Problem pb = binding_2d();
  const Hamiltonian ham(pb, g);
  for (int t : {1, 5, 17}) {
    std::vector<double> v(g.size());
    const double k0 = g.freq(t);
    for (std::size_t i = 0; i < g.size(); ++i) {
      v[i] = std::cos(k0 * g.coord(static_cast<int>(i / 64)));
    }
    const Field w(g, std::move(v));
    const Field tw = ham.apply_T_minus_m(w);
    const double a = kinetic_symbol(pb.m, k0 * k0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(tw.values()[i] - a * w.values()[i]) /
                                  (std::abs(a) + 1.0));
    }
  }
  const double dt = seconds_since(t0);
  const bool pass = worst <= 1e-11 && dt < 1.0;
  return report_line(1, pass,
                     "spectral identities: worst rel err " + fmt(worst) +
                         " (<= 1e-11), runtime " + fmt(dt) + " s (< 1)");
}

// 2. Extension identities.
bool criterion2() {
  const Grid g = make_grid(2, 8.0, 48);
  const Problem pb = binding_2d();
  const Hamiltonian ham(pb, g);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Field w = random_field(g, 100 + seed);
    const double q = extend(w, pb.m).quadratic_part();
    const double k = ham.energy(w).kinetic;
    worst = std::max(worst, std::abs(q - k) / std::max(k, 1e-300));
  }
  std::size_t violations = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Field w = random_field(g, 200 + seed);
    const double best = extend(w, pb.m).h1_sq();
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      if (competitor_h1_sq(w, pb.m, c) < best * (1.0 - 1e-12)) ++violations;
    }
  }
  const bool pass = worst <= 1e-12 && violations == 0;
  return report_line(2, pass,
                     "extension: quadratic-part rel err " + fmt(worst) +
                         " (<= 1e-12), competitor violations " +
                         std::to_string(violations) + " (= 0)");
}

// 3. Gradient vs finite differences.
bool criterion3() {
  const Grid g = make_grid(2, 8.0, 32);
  double worst = 0.0;
  for (int regime = 0; regime < 2; ++regime) {
    Problem pb = binding_2d();
    if (regime == 1) {
      pb.eta = 0.0;
      pb.p = 3.5;
      pb.potential = PotentialSpec::power_law(1.0);
      pb.weak_q = 2.0;
    }
    const Hamiltonian ham(pb, g);
    for (std::uint64_t pair = 1; pair <= 10; ++pair) {
      const Field w = random_field(g, 300 + pair, 0.3);
      const Field z = random_field(g, 400 + pair);
      const Field grad = ham.gradient(w);
      const double eps = 1e-5;
      const auto shifted = [&](double t) {
        std::vector<double> v = w.values();
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += t * z.values()[i];
        return ham.energy(Field(g, std::move(v))).total;
      };
      const double fd = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
      const double an = inner(grad, z);
      worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1.0));
    }
  }
  const bool pass = worst <= 1e-6;
  return report_line(3, pass,
                     "gradient: worst FD rel err " + fmt(worst) + " (<= 1e-6)");
}

// 4. Trace inequality and quadratic positivity over a 100-field corpus.
bool criterion4() {
  const Grid g = make_grid(2, 8.0, 32);
  const double m = 1.0;
  const auto specs = make_corpus_specs(2, 8.0, 50, 77);
  std::vector<Field> corpus;
  for (const auto& s : specs) corpus.push_back(realize(s, g));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    corpus.push_back(random_field(g, 500 + seed, 0.2));
  }
  double worst_trace = 0.0;
  double worst_quad = 0.0;
  for (const Field& w : corpus) {
    for (double p : {2.0, 2.5, 4.0}) {
      const auto rep = trace_inequality_check(w, m, p);
      worst_trace = std::min(worst_trace, rep.margin);
    }
    const ExtensionField v = extend(w, m);
    worst_quad =
        std::min(worst_quad, v.quadratic_part() / std::max(v.h1_sq(), 1e-300));
  }
  const bool pass = worst_trace >= -1e-6 && worst_quad >= -1e-6;
  return report_line(4, pass,
                     "trace/positivity over " + std::to_string(corpus.size()) +
                         " fields: worst trace margin " + fmt(worst_trace) +
                         ", worst quadratic part " + fmt(worst_quad) +
                         " (>= -1e-6)");
}

struct Instance {
  SolveReport rep;
  Hamiltonian ham;
  double seconds = 0.0;
  bool probe_negative_small_lambda = false;
};

Instance solve_instance(const Problem& pb, const Grid& g) {
  const auto t0 = Clock::now();
  Hamiltonian ham(pb, g);
  const Field w0 = initial_guess(pb, g, {});

  NegativityProbe probe = negativity_probe(ham, w0);
  bool neg_small = false;
  for (std::size_t i = 0; i < probe.lambdas.size(); ++i) {
    if (probe.lambdas[i] < 1.0 && probe.values[i] < 0.0) neg_small = true;
  }
  SolveOptions opts;
  opts.tol_res = 1e-7;
  SolveReport rep = solve(ham, w0, opts);
  Instance inst{std::move(rep), std::move(ham), seconds_since(t0), neg_small};
  return inst;
}

// 5. Negativity of the constrained infimum, 2D and 3D.
bool criterion5(Instance& inst2d, Instance& inst3d) {
  inst2d = solve_instance(binding_2d(), make_grid(2, 8.0, 64));
  inst3d = solve_instance(newton_3d(1.5), make_grid(3, 10.0, 48));
  bool pass = true;
  std::string detail = "negativity:";
  for (const Instance* inst : {&inst2d, &inst3d}) {
    const bool converged = inst->rep.status == SolveStatus::Converged;
    const bool ok = converged && inst->probe_negative_small_lambda &&
                    inst->rep.I_value < 0.0 && inst->seconds < 120.0;
    pass = pass && ok;
    detail += std::string(" [N=") +
              std::to_string(inst->ham.grid().dim()) + ": " +
              to_string(inst->rep.status) + ", I=" + fmt(inst->rep.I_value) +
              " (<0), probe<0 " +
              (inst->probe_negative_small_lambda ? "yes" : "no") + ", " +
              fmt(inst->seconds) + " s (<120)]";
  }
  return report_line(5, pass, detail);
}

// 6. Euler-Lagrange residual and positive multiplier.
bool criterion6(const Instance& inst2d, const Instance& inst3d) {
  bool pass = true;
  std::string detail = "Euler-Lagrange:";
  for (const Instance* inst : {&inst2d, &inst3d}) {
    const SolveReport& rep = inst->rep;
    const Grid& g = inst->ham.grid();
    const Field grad = inst->ham.gradient(rep.w);
    double res2 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = grad.values()[i] + rep.mu * rep.w.values()[i];
      res2 += r * r;
    }
    const double res = std::sqrt(res2 * g.cell_volume());
    const double tol = 10.0 * 1e-7 * std::max(1.0, std::abs(rep.I_value));
    const double mu_dis =
        std::abs(rep.mu - rep.mu_alt) / std::max(std::abs(rep.mu), 1e-300);
    const bool ok = res <= tol && rep.mu > 0.0 && mu_dis <= 1e-8;
    pass = pass && ok;
    detail += std::string(" [N=") + std::to_string(g.dim()) + ": ||g+mu w||=" +
              fmt(res) + " (<=" + fmt(tol) + "), mu=" + fmt(rep.mu) +
              " (>0), formula gap " + fmt(mu_dis) + " (<=1e-8)]";
  }
  return report_line(6, pass, detail);
}

// 7. Subadditivity, sublinearity, concavity on a 5-point 2D mass grid.
bool criterion7() {
  const Problem pb = binding_2d();
  const Grid g = make_grid(2, 8.0, 48);
  SolveOptions opts;
  opts.tol_res = 1e-8;
  const std::vector<SubadditivityPair> pairs = {
      {1.6, 0.8}, {1.6, 0.6}, {1.2, 0.4}};
  const std::vector<double> thetas = {1.5, 2.0};
  const std::vector<double> masses = {0.8, 1.0, 1.2, 1.4, 1.6};
  const auto rep = subadditivity_check(pb, g, pairs, thetas, masses, opts);
  std::size_t concave = 0;
  for (bool b : rep.midpoint_concave) concave += b ? 1 : 0;
  double min_excess = std::numeric_limits<double>::infinity();
  for (const auto& pr : rep.pairs) {
    min_excess = std::min(min_excess, pr.margin / std::max(pr.required_margin,
                                                           1e-300));
  }
  const bool pass = rep.all_hold && concave == rep.midpoint_concave.size();
  return report_line(
      7, pass,
      "subadditivity: all pairs/scalings hold " +
          std::string(rep.all_hold ? "yes" : "no") + ", min margin ratio " +
          fmt(min_excess) + " (> 1), concave midpoints " +
          std::to_string(concave) + "/" +
          std::to_string(rep.midpoint_concave.size()));
}

// 8. Mass-critical scan with refinement and box studies plus coercivity sign.
bool criterion8(std::vector<Field>* minimizers_out, double* bracket_lo,
                double* bracket_hi) {
  const auto t0 = Clock::now();
  ScanOptions opts;
  opts.tol_mass = 0.05;
  opts.solve.tol_res = 1e-6;
  opts.solve.max_iter = 4000;

  const Problem pb = newton_3d(1.0);
  const Grid base = make_grid(3, 10.0, 48);
  const ScanReport s0 = scan_mass(pb, base, 1.5, 4.0, opts);
  const double mid0 = 0.5 * (s0.bracket_lo + s0.bracket_hi);
  const double width = (s0.bracket_hi - s0.bracket_lo) / s0.bracket_hi;

  const Grid fine = make_grid(3, 10.0, 64);
  const ScanReport s1 = scan_mass(pb, fine, 1.5, 4.0, opts);
  const double shift_n = std::abs(0.5 * (s1.bracket_lo + s1.bracket_hi) - mid0) / mid0;

  // Larger box at fixed spacing, so the collapse guard sees the same h.
  const Grid big = make_grid(3, 15.0, 72);
  const ScanReport s2 = scan_mass(pb, big, 1.5, 4.0, opts);
  const double shift_l = std::abs(0.5 * (s2.bracket_lo + s2.bracket_hi) - mid0) / mid0;

  // Coercivity threshold from the fitted constants; the fit is an upper
  // envelope over the corpus, so the threshold is bracketed rather than
  // pinned: it must exceed the proven-coercive side and stay within a factor
  // 2 of the collapsing side.
  auto corpus = make_corpus_specs(3, 10.0, 10, 7);
  for (double width_b : {0.5, 0.8, 1.2}) {
    corpus.push_back({{{0.0, 0.0, 0.0}, width_b, 1.0}});
  }
  const auto coer = coercivity_threshold(pb, base, corpus,
                                         s0.subcritical_minimizers);
  const bool coer_ok = !coer.always_coercive &&
                       coer.threshold_mass > s0.bracket_lo &&
                       coer.threshold_mass < 2.0 * s0.bracket_hi;

  const double dt = seconds_since(t0);
  const bool pass =
      width <= 0.05 && shift_n <= 0.10 && shift_l <= 0.10 && coer_ok &&
      dt < 1800.0;
  *minimizers_out = s0.subcritical_minimizers;
  *bracket_lo = s0.bracket_lo;
  *bracket_hi = s0.bracket_hi;
  return report_line(
      8, pass,
      "mass-critical scan: bracket (" + fmt(s0.bracket_lo) + ", " +
          fmt(s0.bracket_hi) + ") width " + fmt(width) +
          " (<=0.05), shift n48->64 " + fmt(shift_n) + ", shift L10->15 " +
          fmt(shift_l) + " (<=0.1), threshold M*=" + fmt(coer.threshold_mass) +
          " in (lo, 2 hi) " + (coer_ok ? "yes" : "no") + ", runtime " +
          fmt(dt) + " s (<1800)");
}

// 9. Symmetry and decay of converged minimizers, box-stability of the tail.
bool criterion9() {
  const Problem pb = binding_2d();
  SolveOptions opts;
  opts.tol_res = 1e-8;

  // The box must dominate the decay length: at L = 8 the periodic images
  // leave an O(1e-3) square-anisotropy in the tail regardless of n.
  const Grid g1 = make_grid(2, 12.0, 72);
  const SolveReport r1 = solve(Hamiltonian(pb, g1), initial_guess(pb, g1, {}), opts);
  const Grid g2 = make_grid(2, 18.0, 108);  // L -> 1.5 L at fixed spacing
  const SolveReport r2 = solve(Hamiltonian(pb, g2), initial_guess(pb, g2, {}), opts);

  const FieldDiagnostics d1 = r1.diagnostics;
  const FieldDiagnostics d2 = r2.diagnostics;
  const double slope_shift =
      std::abs(d2.tail_slope - d1.tail_slope) / std::abs(d1.tail_slope);
  const bool pass = r1.status == SolveStatus::Converged &&
                    r2.status == SolveStatus::Converged &&
                    d1.angular_defect <= 1e-3 &&
                    d1.monotonicity_score == 1.0 && d1.tail_slope < 0.0 &&
                    d1.tail_reliable && d2.tail_reliable &&
                    slope_shift <= 0.15;
  return report_line(
      9, pass,
      "symmetry/decay: angular defect " + fmt(d1.angular_defect) +
          " (<=1e-3), monotonicity " + fmt(d1.monotonicity_score) +
          " (=1), tail slope " + fmt(d1.tail_slope) + " (<0), box shift " +
          fmt(slope_shift) + " (<=0.15)");
}

// 10. Rearrangement suite.
bool criterion10() {
  const Grid g = make_grid(2, 8.0, 32);

  // Exact multiset identities and idempotence.
  bool exact = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Field f = random_field(g, 600 + seed);
    const Field r = rearrange(f);
    std::vector<double> a = f.values();
    for (auto& x : a) x = std::abs(x);
    std::vector<double> b = r.values();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    exact = exact && a == b;
    const Field rr = rearrange(r);
    exact = exact && rr.values() == r.values();
  }

  // Riesz margin over a 50-field corpus.
  const PotentialSpec W = PotentialSpec::power_law(0.5);
  const PotentialSymbol sym = symbol_on_grid(W, g);
  const auto hartree_D = [&](const Field& w) {
    std::vector<double> rho(w.values().size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
      rho[i] = w.values()[i] * w.values()[i];
    }
    const auto conv = convolve(sym, Field(g, std::move(rho)));
    double d = 0.0;
    for (std::size_t i = 0; i < conv.size(); ++i) {
      d += conv[i] * w.values()[i] * w.values()[i];
    }
    return d * g.cell_volume();
  };
  // Corpus of well-separated bump sums: every instance has a continuum
  // rearrangement gain far above the O(h) noise floor of the discrete
  // operator, so the pinned tolerance tests the inequality, not the noise.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pos(-2.5, 2.5);
  std::uniform_real_distribution<double> wd(0.7, 1.2);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  double riesz_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    FieldSpec s;
    const int nb = 2 + static_cast<int>(rng() % 2);
    for (int b = 0; b < nb; ++b) {
      double cx = pos(rng) + (b % 2 ? 3.0 : -3.0);
      double cy = pos(rng) + (b < 2 ? -2.5 : 2.5);
      s.push_back({{cx, cy}, wd(rng), amp(rng)});
    }
    const Field f = realize(s, g);
    const double d = hartree_D(f);
    const double ds = hartree_D(rearrange(f));
    riesz_margin = std::min(riesz_margin, (ds - d) / std::abs(d));
  }

  // Kinetic-decrease defect over three refinements.
  const auto kin_specs = make_corpus_specs(2, 8.0, 5, 27);
  std::vector<double> defects;
  for (int n : {16, 32, 64}) {
    const Grid gr = make_grid(2, 8.0, n);
    const Problem pb = binding_2d();
    const Hamiltonian ham(pb, gr);
    double worst = 0.0;
    for (const auto& s : kin_specs) {
      const Field f = realize(s, gr);
      const double kf = ham.energy(f).kinetic;
      const double kr = ham.energy(rearrange(f)).kinetic;
      worst = std::max(worst, (kr - kf) / kf);
    }
    defects.push_back(worst);
  }
  const bool shrink = defects[1] <= defects[0] && defects[2] <= defects[1];

  const bool pass = exact && riesz_margin >= -1e-6 && shrink;
  return report_line(
      10, pass,
      "rearrangement: multiset identities " + std::string(exact ? "exact" : "BROKEN") +
          ", Riesz margin " + fmt(riesz_margin) +
          " (>=-1e-6), kinetic defects " + fmt(defects[0]) + " -> " +
          fmt(defects[1]) + " -> " + fmt(defects[2]) +
          (shrink ? " (monotone)" : " (NOT monotone)"));
}

// 11. Byte-identical determinism of solve artifacts and scan CSV.
bool criterion11() {
  const fs::path tmp =
      fs::temp_directory_path() / "relgs_acceptance_determinism";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const auto write_cfg = [&](const fs::path& p, const fs::path& outdir,
                             bool scan_cfg) {
    std::ofstream out(p);
    if (!scan_cfg) {
      out << "problem.dim = 2\nproblem.m = 1\nproblem.eta = 0.1\n"
             "problem.sigma = 1.5\nproblem.p = 3\nproblem.q = 4\n"
             "problem.M = 1\npotential.kind = power_law\n"
             "potential.alpha = 0.5\ngrid.L = 8\ngrid.n = 32\n"
             "minimizer.tol_res = 1e-7\nminimizer.guess_width = 2\n";
    } else {
      out << "problem.dim = 2\nproblem.m = 1\nproblem.eta = 0\n"
             "problem.sigma = 1\nproblem.p = 3.5\nproblem.q = 2\n"
             "problem.M = 1\npotential.kind = power_law\n"
             "potential.alpha = 1\ngrid.L = 8\ngrid.n = 48\n"
             "minimizer.tol_res = 1e-7\nscan.M_lo = 0.8\nscan.M_hi = 2.5\n"
             "scan.tol_M = 0.25\n";
    }
    out << "output.dir = " << outdir.string() << "\n";
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  bool pass = true;
  write_cfg(tmp / "solve_a.cfg", tmp / "sa", false);
  write_cfg(tmp / "solve_b.cfg", tmp / "sb", false);
  pass = pass && cmd_solve((tmp / "solve_a.cfg").string()) == 0;
  pass = pass && cmd_solve((tmp / "solve_b.cfg").string()) == 0;
  pass = pass &&
         slurp(tmp / "sa" / "solution.rgs1") == slurp(tmp / "sb" / "solution.rgs1");
  const std::string ra = slurp(tmp / "sa" / "report.json");
  const std::string rb = slurp(tmp / "sb" / "report.json");
  // Reports differ only in the config hash (output.dir); strip those lines.
  const auto strip_hash = [](std::string s) {
    const auto pos = s.find("config_hash");
    if (pos != std::string::npos) {
      const auto start = s.rfind('\n', pos);
      const auto end = s.find('\n', pos);
      s.erase(start, end - start);
    }
    return s;
  };
  pass = pass && strip_hash(ra) == strip_hash(rb);

  write_cfg(tmp / "scan_a.cfg", tmp / "ca", true);
  write_cfg(tmp / "scan_b.cfg", tmp / "cb", true);
  pass = pass && cmd_scan_mass((tmp / "scan_a.cfg").string()) == 0;
  pass = pass && cmd_scan_mass((tmp / "scan_b.cfg").string()) == 0;
  const std::string csa = slurp(tmp / "ca" / "scan.csv");
  const std::string csb = slurp(tmp / "cb" / "scan.csv");
  pass = pass && !csa.empty() &&
         csa.substr(csa.find('\n')) == csb.substr(csb.find('\n'));

  fs::remove_all(tmp);
  return report_line(11, pass,
                     std::string("determinism: solve artifacts and scan CSV ") +
                         (pass ? "byte-identical" : "DIFFER"));
}

}  // namespace

int main() {
  int failures = 0;
  Instance inst2d{SolveReport{}, Hamiltonian(binding_2d(), make_grid(2, 8.0, 16)), 0.0, false};
  Instance inst3d = inst2d;
  std::vector<Field> minimizers;
  double lo = 0.0, hi = 0.0;

  failures += criterion1() ? 0 : 1;
  failures += criterion2() ? 0 : 1;
  failures += criterion3() ? 0 : 1;
  failures += criterion4() ? 0 : 1;
  failures += criterion5(inst2d, inst3d) ? 0 : 1;
  failures += criterion6(inst2d, inst3d) ? 0 : 1;
  failures += criterion7() ? 0 : 1;
  failures += criterion8(&minimizers, &lo, &hi) ? 0 : 1;
  failures += criterion9() ? 0 : 1;
  failures += criterion10() ? 0 : 1;
  failures += criterion11() ? 0 : 1;

  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
