#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relgs/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relgs: constrained ground states of the pseudo-relativistic "
               "Hartree energy on a periodic box"};
  app.require_subcommand(1);

  std::string config_path;
  std::string snapshot_path;
  std::string output_path;
  std::vector<std::string> checks;

  auto* solve = app.add_subcommand("solve", "minimize the energy at fixed mass");
  solve->add_option("config,--config", config_path, "config file")->required();

  auto* scan = app.add_subcommand(
      "scan-mass", "bisect the critical mass of a mass-critical problem");
  scan->add_option("config,--config", config_path, "config file")->required();

  auto* verify = app.add_subcommand("verify", "run inequality checks");
  verify->add_option("config,--config", config_path, "config file")->required();
  verify->add_option("--checks", checks,
                     "subset of checks (default: all)");

  auto* extend = app.add_subcommand(
      "extend-check", "half-space extension and trace checks");
  extend->add_option("config,--config", config_path, "config file")->required();

  auto* rearr = app.add_subcommand(
      "rearrange", "symmetric decreasing rearrangement of a snapshot");
  rearr->add_option("snapshot", snapshot_path, "input RGS1 snapshot")
      ->required();
  rearr->add_option("-o,--output", output_path, "output snapshot path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  if (solve->parsed()) return relgs::cmd_solve(config_path);
  if (scan->parsed()) return relgs::cmd_scan_mass(config_path);
  if (verify->parsed()) return relgs::cmd_verify(config_path, checks);
  if (extend->parsed()) return relgs::cmd_extend_check(config_path);
  if (rearr->parsed()) return relgs::cmd_rearrange(snapshot_path, output_path);
  return 64;
}
