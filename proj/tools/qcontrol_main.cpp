// qcontrol: spectral simulation, linear control synthesis, nonlinear
// fixed-point control and empirical diagnostics on a periodic box.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/runner.hpp"

namespace {

struct CommonFlags {
  std::string config_file;
  std::string output_dir;
  int dimension = -1;
  int n = -1;
  double half_side = -1.0;
  double radius = -1.0;
  double horizon = -1.0;
  int steps = -1;
  double tol = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file, "flat key = value config file");
  cmd->add_option("--output", flags.output_dir, "output directory (must be empty)");
  cmd->add_option("--dim", flags.dimension, "spatial dimension (1, 2 or 3)");
  cmd->add_option("--n", flags.n, "grid points per axis (power of two)");
  cmd->add_option("--box", flags.half_side, "box half side L, domain [-L, L)^d");
  cmd->add_option("--radius", flags.radius, "control dead-zone radius R");
  cmd->add_option("--horizon", flags.horizon, "control horizon T");
  cmd->add_option("--steps", flags.steps, "time steps nt");
  cmd->add_option("--tol", flags.tol, "primary solver tolerance");
  cmd->add_option("--seed", flags.seed, "random seed")->each([&flags](const std::string&) {
    flags.seed_set = true;
  });
}

qcontrol::RunConfig assemble(const CommonFlags& flags, const std::string& subcommand) {
  qcontrol::RunConfig config;
  if (!flags.config_file.empty()) {
    config = qcontrol::parse_config_file(flags.config_file);
  }
  if (flags.dimension > 0) config.dimension = flags.dimension;
  if (flags.n > 0) config.n = flags.n;
  if (flags.half_side > 0.0) config.half_side = flags.half_side;
  if (flags.radius >= 0.0) config.radius = flags.radius;
  if (flags.horizon > 0.0) config.horizon = flags.horizon;
  if (flags.steps > 0) config.nt = flags.steps;
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.tol > 0.0) {
    if (subcommand == "nlcontrol") {
      config.tol_fixed_point = flags.tol;
    } else {
      config.tol_cg = flags.tol;
    }
  }
  if (!flags.output_dir.empty()) {
    config.output_dir = flags.output_dir;
  } else if (config.output_dir == qcontrol::RunConfig{}.output_dir) {
    config.output_dir = "qcontrol-out-" + subcommand;
  }
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qcontrol: null controls for the defocusing quintic Schroedinger equation on a "
      "periodic box.\n"
      "Exit codes: 0 pass, 2 config error, 3 solver non-convergence, 4 blowup detected, "
      "5 io error.\n"
      "QCONTROL_THREADS caps internal worker parallelism."};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string radius_sweep;
  std::string diag_name = "all";
  bool sweep = false;

  CLI::App* simulate = app.add_subcommand("simulate", "forward quintic solve of u0, no control");
  add_common(simulate, flags);
  CLI::App* hum = app.add_subcommand("hum", "linear control synthesis and verification");
  add_common(hum, flags);
  CLI::App* nlcontrol =
      app.add_subcommand("nlcontrol", "nonlinear fixed-point control and verification");
  add_common(nlcontrol, flags);
  CLI::App* observe = app.add_subcommand("observe", "observability constant (R sweep)");
  add_common(observe, flags);
  observe->add_option("--radius-sweep", radius_sweep, "sweep start:stop:step over R");
  CLI::App* diag = app.add_subcommand("diag", "empirical statement checks");
  add_common(diag, flags);
  diag->add_option("name", diag_name,
                   "diagnostic key (all, c28, App1, c27, item_i, item_ii, sobolev, c26, c3)");
  diag->add_flag("--sweep", sweep, "add a refinement doubling to the trend");

  CLI11_PARSE(app, argc, argv);

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    qcontrol::RunConfig config = assemble(flags, subcommand);
    if (subcommand == "observe" && !radius_sweep.empty()) config.radius_sweep = radius_sweep;
    if (subcommand == "diag") {
      config.diag_name = diag_name;
      config.sweep = config.sweep || sweep;
    }
    const qcontrol::RunManifest manifest =
        qcontrol::run_subcommand(subcommand, config, std::cout);
    std::cout << subcommand << ": " << (manifest.exit_code == 0 ? "pass" : "fail")
              << ", artifacts in " << config.output_dir << '\n';
    return manifest.exit_code;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return qcontrol::exit_code_for(error);
  }
}
