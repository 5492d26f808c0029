#include "relgs/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "relgs/halfspace.hpp"
#include "relgs/snapshot.hpp"
#include "relgs/verify.hpp"

namespace relgs {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "relgs 0.1.0";

PotentialSpec potential_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("potential.kind", "power-law");
  if (kind == "power-law" || kind == "power_law") {
    return PotentialSpec::power_law(cfg.get_double("potential.alpha", 1.0));
  }
  if (kind == "yukawa") {
    return PotentialSpec::yukawa(cfg.get_double("potential.mu_yukawa", 1.0));
  }
  if (kind == "tabulated") {
    return load_tabulated_csv(cfg.get_string("potential.table_path"));
  }
  if (kind == "zero") return PotentialSpec::zero();
  throw ConfigError("potential.kind must be power-law, yukawa, tabulated, "
                    "or zero; got: " + kind);
}

json diagnostics_json(const FieldDiagnostics& d) {
  return json{{"tail_slope", d.tail_slope},
              {"tail_reliable", d.tail_reliable},
              {"monotonicity_score", d.monotonicity_score},
              {"angular_defect", d.angular_defect}};
}

json report_json(const RunConfig& rc, const SolveReport& rep) {
  return json{{"I", rep.I_value},
              {"K", rep.breakdown.kinetic},
              {"P", rep.breakdown.power},
              {"D", rep.breakdown.hartree},
              {"mu", rep.mu},
              {"mu_alt", rep.mu_alt},
              {"residual", rep.residual},
              {"status", to_string(rep.status)},
              {"iterations", rep.iterations},
              {"diagnostics", diagnostics_json(rep.diagnostics)},
              {"zero_mode_convention", rep.zero_mode_convention},
              {"guard_note", rep.guard_note},
              {"seed", rc.seed},
              {"config_hash", rc.raw.hash_hex()}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_run_record(const RunConfig& rc, const std::string& command,
                      double wall_seconds, const json& outputs) {
  const json record{{"version", kVersion},
                    {"command", command},
                    {"config_hash", rc.raw.hash_hex()},
                    {"config", rc.raw.canonical_text()},
                    {"seed", rc.seed},
                    {"wall_seconds", wall_seconds},
                    {"outputs", outputs}};
  write_text(std::filesystem::path(rc.output_dir) / "run_record.json",
             record.dump(2) + "\n");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::filesystem::path out_path(const RunConfig& rc, const std::string& name) {
  std::filesystem::create_directories(rc.output_dir);
  return std::filesystem::path(rc.output_dir) / name;
}

int config_failure(const std::exception& e) {
  std::cerr << "configuration error: " << e.what() << "\n";
  return 64;
}

Field solve_guess(const RunConfig& rc) {
  const std::string kind = rc.raw.get_string("minimizer.guess", "gaussian");
  InitialGuess g;
  g.seed = rc.seed;
  g.width = rc.raw.get_double("minimizer.guess_width", 0.0);
  if (kind == "gaussian") {
    g.kind = GuessKind::Gaussian;
  } else if (kind == "random") {
    g.kind = GuessKind::SeededRandom;
  } else if (kind == "snapshot") {
    g.kind = GuessKind::Custom;
    g.custom = read_snapshot(rc.raw.get_string("minimizer.initial_snapshot"));
  } else {
    throw ConfigError("minimizer.guess must be gaussian, random, or snapshot");
  }
  return initial_guess(rc.problem, rc.grid, g);
}

struct CheckOutcome {
  std::string name;
  bool pass = false;
  json report;
  Field worst;  // serialized for replay when the check fails
};

std::vector<Field> realize_corpus(const std::vector<FieldSpec>& specs,
                                  const Grid& grid) {
  std::vector<Field> fields;
  fields.reserve(specs.size());
  for (const auto& s : specs) fields.push_back(realize(s, grid));
  return fields;
}

json verification_json(const VerificationReport& r) {
  json j{{"check", r.check},
         {"n_instances", r.n_instances},
         {"worst_margin", r.worst_margin},
         {"fitted_C", r.fitted_C},
         {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

CheckOutcome run_t_squared(const RunConfig& rc) {
  CheckOutcome out;
  out.name = "T-squared";
  std::mt19937_64 rng(rc.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Grid& g = rc.grid;
  double worst = 0.0;
  Field worst_field;
  for (int inst = 0; inst < 10; ++inst) {
    // Band-limited random field: damp high modes so T^2 stays well resolved.
    std::vector<std::complex<double>> spec(g.size());
    const double kmax2 = g.freq(g.points_per_axis() / 2) *
                         g.freq(g.points_per_axis() / 2);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double damp = std::exp(-4.0 * g.freq_norm_sq(i) / kmax2);
      spec[i] = damp * std::complex<double>(gauss(rng), gauss(rng));
    }
    Field w(g, inverse_transform(g, spec));
    const Field tt = apply_T(apply_T(w, rc.problem.m), rc.problem.m);
    // Reference: multiply the spectrum by |k|^2 + m^2.
    auto ref_spec = w.spectrum();
    for (std::size_t i = 0; i < ref_spec.size(); ++i) {
      ref_spec[i] *= g.freq_norm_sq(i) + rc.problem.m * rc.problem.m;
    }
    const std::vector<double> ref = inverse_transform(g, ref_spec);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      diff += (tt.values()[i] - ref[i]) * (tt.values()[i] - ref[i]);
      norm += ref[i] * ref[i];
    }
    const double rel = norm > 0.0 ? std::sqrt(diff / norm) : 0.0;
    if (rel > worst) {
      worst = rel;
      worst_field = w;
    }
  }
  out.pass = worst <= 1e-11;
  out.report = json{{"check", out.name},
                    {"n_instances", 10},
                    {"worst_margin", 1e-11 - worst},
                    {"fitted_C", 0.0},
                    {"pass", out.pass}};
  if (!out.pass) out.worst = worst_field;
  return out;
}

double kinetic_symbol_energy(const Problem& pb, const Field& w) {
  const Grid& g = w.grid();
  const auto& spec = w.spectrum();
  double K = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    K += kinetic_symbol(pb.m, g.freq_norm_sq(i)) * std::norm(spec[i]);
  }
  return K / g.volume();
}

CheckOutcome run_extension(const RunConfig& rc,
                           const std::vector<Field>& corpus) {
  CheckOutcome out;
  out.name = "extension";
  double worst = std::numeric_limits<double>::infinity();
  Field worst_field;
  const double m = rc.problem.m;
  for (const Field& w : corpus) {
    const ExtensionField v = extend(w, m);
    const double K = kinetic_symbol_energy(rc.problem, w);
    const double quad = v.quadratic_part();
    const double id_margin =
        1e-12 - std::abs(quad - K) / std::max(std::abs(K), 1e-300);
    const double comp =
        competitor_h1_sq(w, m, std::max(m, 0.5)) - v.h1_sq();
    const double margin = std::min(id_margin, comp / std::max(v.h1_sq(), 1e-300));
    if (margin < worst) {
      worst = margin;
      worst_field = w;
    }
  }
  out.pass = worst >= 0.0;
  out.report = json{{"check", out.name},
                    {"n_instances", corpus.size()},
                    {"worst_margin", worst},
                    {"fitted_C", 0.0},
                    {"pass", out.pass}};
  if (!out.pass) out.worst = worst_field;
  return out;
}

CheckOutcome run_trace(const RunConfig& rc, const std::vector<Field>& corpus) {
  CheckOutcome out;
  out.name = "trace";
  double worst = std::numeric_limits<double>::infinity();
  Field worst_field;
  for (const Field& w : corpus) {
    const TraceInequalityReport r =
        trace_inequality_check(w, rc.problem.m, rc.problem.p);
    if (r.margin < worst) {
      worst = r.margin;
      worst_field = w;
    }
  }
  out.pass = worst >= -1e-6;
  out.report = json{{"check", out.name},
                    {"n_instances", corpus.size()},
                    {"worst_margin", worst},
                    {"fitted_C", 0.0},
                    {"pass", out.pass}};
  if (!out.pass) out.worst = worst_field;
  return out;
}

CheckOutcome run_rearrange_check(const std::vector<Field>& corpus) {
  CheckOutcome out;
  out.name = "rearrange";
  double worst = std::numeric_limits<double>::infinity();
  Field worst_field;
  for (const Field& w : corpus) {
    const Field r = rearrange(w);
    const Field rr = rearrange(r);
    double margin = 0.0;
    for (double p : {1.0, 2.0, 3.0}) {
      margin = std::min(margin, -(std::abs(lp_norm(r, p) - lp_norm(w, p))));
    }
    for (std::size_t i = 0; i < r.values().size(); ++i) {
      if (r.values()[i] != rr.values()[i]) margin = -1.0;
    }
    if (margin < worst) {
      worst = margin;
      worst_field = w;
    }
  }
  out.pass = worst >= 0.0;
  out.report = json{{"check", out.name},
                    {"n_instances", corpus.size()},
                    {"worst_margin", worst},
                    {"fitted_C", 0.0},
                    {"pass", out.pass}};
  if (!out.pass) out.worst = worst_field;
  return out;
}

CheckOutcome run_decay(const RunConfig& rc) {
  CheckOutcome out;
  out.name = "decay";
  const Grid& g = rc.grid;
  std::vector<double> vals(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    vals[i] = std::exp(-std::sqrt(g.coord_norm_sq(i)));
  }
  const FieldDiagnostics d = field_diagnostics(Field(g, std::move(vals)));
  const double margin = 0.02 - std::abs(d.tail_slope + 1.0);
  out.pass = d.tail_reliable && margin >= 0.0;
  out.report = json{{"check", out.name},
                    {"n_instances", 1},
                    {"worst_margin", margin},
                    {"fitted_C", 0.0},
                    {"pass", out.pass}};
  return out;
}

}  // namespace

int thread_cap_from_env() {
  const char* env = std::getenv("RELGS_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  return static_cast<int>(std::min(v, 64l));
}

RunConfig load_run_config(const std::string& path) {
  const Config cfg = Config::from_file(path);

  Problem pb;
  pb.dim = static_cast<int>(cfg.get_int("problem.dim", 3));
  pb.m = cfg.get_double("problem.m", 1.0);
  pb.eta = cfg.get_double("problem.eta", 0.0);
  pb.sigma = cfg.get_double("problem.sigma", 1.0);
  pb.p = cfg.get_double("problem.p", 3.0);
  pb.target_mass = cfg.get_double("problem.M", 1.0);
  pb.potential = potential_from_config(cfg);
  pb.weak_q = cfg.get_double(
      "problem.q", pb.potential.default_weak_exponent(pb.dim));

  const auto violations = pb.validate();
  if (!violations.empty()) {
    std::string msg = "invalid problem:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }

  RunConfig rc{.problem = pb,
               .grid = make_grid(pb.dim, cfg.get_double("grid.L"),
                                 static_cast<int>(cfg.get_int("grid.n"))),
               .raw = cfg};

  rc.solve.tol_res = cfg.get_double("minimizer.tol_res", 1e-8);
  rc.solve.max_iter =
      static_cast<std::size_t>(cfg.get_int("minimizer.max_iter", 20000));
  rc.solve.tau0 = cfg.get_double("minimizer.tau0", 0.0);
  rc.solve.collapse_floor = cfg.get_double("minimizer.collapse_floor", 0.0);
  rc.solve.guard_factor = cfg.get_double("minimizer.guard_factor", 0.45);
  rc.solve.recenter_on_convergence = cfg.get_bool("minimizer.recenter", true);

  rc.scan.tol_mass = cfg.get_double("scan.tol_M", 0.05);
  rc.scan.lambda_max = cfg.get_double("scan.lambda_max", 64.0);
  rc.scan.max_expansions =
      static_cast<int>(cfg.get_int("scan.max_expansions", 4));
  rc.scan.solve = rc.solve;
  rc.scan_mass_lo = cfg.get_double("scan.M_lo", 0.0);
  rc.scan_mass_hi = cfg.get_double("scan.M_hi", 0.0);

  rc.output_dir = cfg.get_string("output.dir", ".");
  rc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  rc.scan.seed = rc.seed;
  rc.corpus_count =
      static_cast<std::size_t>(cfg.get_int("verify.corpus_count", 20));
  rc.strict_deterministic = cfg.get_bool("strict_deterministic", true);
  rc.thread_cap = thread_cap_from_env();
  return rc;
}

int cmd_solve(const std::string& config_path) {
  RunConfig rc;
  try {
    rc = load_run_config(config_path);
  } catch (const std::exception& e) {
    return config_failure(e);
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Hamiltonian ham(rc.problem, rc.grid);
    SolveOptions opts = rc.solve;
    SolveReport rep = solve(ham, solve_guess(rc), opts);
    rep.seed = rc.seed;

    write_snapshot(out_path(rc, "solution.rgs1").string(), rep.w);
    write_text(out_path(rc, "report.json"),
               report_json(rc, rep).dump(2) + "\n");

    const ShellProfile prof = shell_profile(rep.w);
    std::string csv = "# config_hash=" + rc.raw.hash_hex() + "\n";
    csv += "r,shell_average\n";
    for (std::size_t b = 0; b < prof.radii.size(); ++b) {
      if (prof.counts[b] == 0) continue;
      csv += format_double(prof.radii[b]) + "," +
             format_double(prof.averages[b]) + "\n";
    }
    write_text(out_path(rc, "profile.csv"), csv);

    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    write_run_record(rc, "solve", wall,
                     json{{"snapshot", "solution.rgs1"},
                          {"report", "report.json"},
                          {"profile", "profile.csv"},
                          {"status", to_string(rep.status)}});

    switch (rep.status) {
      case SolveStatus::Converged: return 0;
      case SolveStatus::Collapsing: return 2;
      default: return 3;
    }
  } catch (const std::exception& e) {
    return config_failure(e);
  }
}

int cmd_scan_mass(const std::string& config_path) {
  RunConfig rc;
  try {
    rc = load_run_config(config_path);
    if (!rc.problem.mass_critical()) {
      throw ConfigError(
          "scan-mass needs a mass-critical problem: eta = 0 and q = N");
    }
    if (!(rc.scan_mass_lo > 0.0 && rc.scan_mass_hi > rc.scan_mass_lo)) {
      throw ConfigError("scan-mass needs 0 < scan.M_lo < scan.M_hi");
    }
  } catch (const std::exception& e) {
    return config_failure(e);
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const ScanReport rep = scan_mass(rc.problem, rc.grid, rc.scan_mass_lo,
                                     rc.scan_mass_hi, rc.scan);

    std::string csv = "# config_hash=" + rc.raw.hash_hex() + "\n";
    csv += "M,classification,I,mu,residual\n";
    for (const MassPoint& p : rep.points) {
      csv += format_double(p.mass) + "," + to_string(p.cls) + "," +
             format_double(p.I_value) + "," + format_double(p.mu) + "," +
             format_double(p.residual) + "\n";
    }
    write_text(out_path(rc, "scan.csv"), csv);

    write_text(out_path(rc, "bracket.json"),
               json{{"bracket_lo", rep.bracket_lo},
                    {"bracket_hi", rep.bracket_hi},
                    {"n_points", rep.points.size()},
                    {"config_hash", rc.raw.hash_hex()},
                    {"seed", rc.seed}}
                       .dump(2) +
                   "\n");

    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    write_run_record(rc, "scan-mass", wall,
                     json{{"scan", "scan.csv"}, {"bracket", "bracket.json"}});
    return 0;
  } catch (const std::exception& e) {
    return config_failure(e);
  }
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "T-squared", "extension", "trace",     "weak-young",
      "conv-estimate", "coercivity", "riesz", "rearrange", "decay"};
  return names;
}

int cmd_verify(const std::string& config_path,
               const std::vector<std::string>& checks) {
  RunConfig rc;
  try {
    rc = load_run_config(config_path);
  } catch (const std::exception& e) {
    return config_failure(e);
  }
  std::vector<std::string> selected = checks;
  if (selected.empty() ||
      (selected.size() == 1 && selected[0] == "all")) {
    selected = known_checks();
  }
  for (const auto& name : selected) {
    bool known = false;
    for (const auto& k : known_checks()) known = known || k == name;
    if (!known) {
      std::cerr << "configuration error: unknown check: " << name << "\n";
      return 64;
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto specs = make_corpus_specs(
        rc.grid.dim(), rc.grid.box_half_length(), rc.corpus_count, rc.seed);
    const auto corpus = realize_corpus(specs, rc.grid);

    std::vector<CheckOutcome> outcomes;
    for (const auto& name : selected) {
      if (name == "T-squared") {
        outcomes.push_back(run_t_squared(rc));
      } else if (name == "extension") {
        outcomes.push_back(run_extension(rc, corpus));
      } else if (name == "trace") {
        outcomes.push_back(run_trace(rc, corpus));
      } else if (name == "weak-young") {
        const double q = rc.problem.weak_q;
        // Symmetric companion exponents: 1/p + 1/r = 2 - 1/q, p = r.
        const double pr = 2.0 * q / (2.0 * q - 1.0);
        CheckOutcome o;
        o.name = name;
        const VerificationReport r =
            weak_young_check(rc.problem.potential, q, pr, pr, rc.grid, specs);
        o.pass = r.pass;
        o.report = verification_json(r);
        outcomes.push_back(std::move(o));
      } else if (name == "conv-estimate") {
        const ConvEstimateReport r =
            conv_estimate_check(rc.problem, rc.grid, specs);
        CheckOutcome o;
        o.name = name;
        o.pass = r.general.pass && (!r.has_critical || r.critical.pass);
        o.report = json{{"general", verification_json(r.general)}};
        if (r.has_critical) o.report["critical"] = verification_json(r.critical);
        o.report["check"] = name;
        o.report["pass"] = o.pass;
        outcomes.push_back(std::move(o));
      } else if (name == "coercivity") {
        Problem pb = rc.problem;
        pb.eta = 0.0;
        const CoercivityReport r = coercivity_threshold(pb, rc.grid, specs);
        CheckOutcome o;
        o.name = name;
        o.pass = std::isfinite(r.fitted_C) && r.fitted_C >= 0.0;
        o.report = json{{"check", name},
                        {"n_instances", r.n_instances},
                        {"fitted_C", r.fitted_C},
                        {"trace_constant_sq", r.trace_constant_sq},
                        {"weak_norm", r.weak_norm},
                        {"threshold_mass", r.always_coercive
                                               ? -1.0
                                               : r.threshold_mass},
                        {"always_coercive", r.always_coercive},
                        {"coercive_at_target", r.coercive_at_target},
                        {"pass", o.pass}};
        outcomes.push_back(std::move(o));
      } else if (name == "riesz") {
        const VerificationReport r =
            riesz_check(rc.problem.potential, rc.grid, corpus);
        CheckOutcome o;
        o.name = name;
        o.pass = r.pass;
        o.report = verification_json(r);
        outcomes.push_back(std::move(o));
      } else if (name == "rearrange") {
        outcomes.push_back(run_rearrange_check(corpus));
      } else if (name == "decay") {
        outcomes.push_back(run_decay(rc));
      }
    }

    json all = json::array();
    bool all_pass = true;
    for (const auto& o : outcomes) {
      all.push_back(o.report);
      all_pass = all_pass && o.pass;
      if (!o.pass && !o.worst.empty()) {
        write_snapshot(
            out_path(rc, "verify_" + o.name + "_worst.rgs1").string(),
            o.worst);
      }
    }
    write_text(out_path(rc, "verify.json"),
               json{{"config_hash", rc.raw.hash_hex()},
                    {"seed", rc.seed},
                    {"checks", all},
                    {"pass", all_pass}}
                       .dump(2) +
                   "\n");

    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    write_run_record(rc, "verify", wall, json{{"verify", "verify.json"}});
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    return config_failure(e);
  }
}

int cmd_extend_check(const std::string& config_path) {
  return cmd_verify(config_path, {"T-squared", "extension", "trace"});
}

int cmd_rearrange(const std::string& snapshot_path,
                  const std::string& output_path) {
  try {
    const Field f = read_snapshot(snapshot_path);
    const std::string out = output_path.empty()
                                ? snapshot_path + ".rearranged.rgs1"
                                : output_path;
    write_snapshot(out, rearrange(f));
    return 0;
  } catch (const std::exception& e) {
    return config_failure(e);
  }
}

}  // namespace relgs
