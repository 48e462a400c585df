#include "qcontrol/runner.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>

#include "qcontrol/diagnostics.hpp"
#include "qcontrol/errors.hpp"
#include "qcontrol/nonlinear_control.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Records every artifact written into the run directory; the manifest is
// assembled from these records and written last.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(const std::filesystem::path& directory) : directory_(directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) throw io_error("io-error: cannot create output directory " + directory_.string());
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
      (void)entry;
      throw io_error("io-error: output directory is not empty: " + directory_.string());
    }
  }

  const std::filesystem::path& directory() const { return directory_; }

  void record(const std::string& name) {
    const auto path = directory_ / name;
    FileRecord rec;
    rec.name = name;
    rec.bytes = std::filesystem::file_size(path);
    rec.checksum = checksum_file(path);
    records_.push_back(std::move(rec));
  }

  std::vector<FileRecord> take() { return std::move(records_); }

 private:
  std::filesystem::path directory_;
  std::vector<FileRecord> records_;
};

nlohmann::json report_json(const DiagnosticReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["label"] = report.label;
  j["inputs_digest"] = report.inputs_digest;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["residual_or_ratio"] = report.residual_or_ratio;
  j["pass"] = report.pass;
  j["skipped"] = report.skipped;
  j["note"] = report.note;
  j["refinement_trend"] = nlohmann::json::array();
  for (const RefinementPoint& p : report.refinement_trend) {
    j["refinement_trend"].push_back({{"n", p.n}, {"nt", p.nt}, {"value", p.value}});
  }
  return j;
}

void write_json(ArtifactWriter& out, const std::string& name, const nlohmann::json& j) {
  std::ofstream os(out.directory() / name);
  if (!os) throw io_error("io-error: cannot write " + name);
  os << j.dump(2) << '\n';
  os.close();
  out.record(name);
}

void write_trend_artifacts(ArtifactWriter& out, const std::string& stem,
                           const DiagnosticReport& report) {
  std::vector<std::vector<double>> rows;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const RefinementPoint& p : report.refinement_trend) {
    rows.push_back({static_cast<double>(p.n), static_cast<double>(p.nt), p.value});
    xs.push_back(static_cast<double>(p.nt));
    ys.push_back(p.value);
  }
  write_csv(out.directory() / (stem + "_trend.csv"), {"n", "nt", "value"}, rows);
  out.record(stem + "_trend.csv");
  if (xs.size() >= 2) {
    write_svg_line_plot(out.directory() / (stem + "_trend.svg"), report.name + " trend", xs, ys);
    out.record(stem + "_trend.svg");
  }
}

DiagnosticConfig diag_config(const RunConfig& config) {
  DiagnosticConfig cfg;
  cfg.dimension = config.dimension;
  cfg.n = config.n;
  cfg.half_side = config.half_side;
  cfg.radius = config.radius;
  cfg.horizon = config.horizon;
  cfg.nt = config.nt;
  cfg.seed = config.seed;
  cfg.sweep = config.sweep;
  return cfg;
}

bool run_simulate(const RunConfig& config, ArtifactWriter& out, std::ostream& log) {
  const Grid grid = make_grid_from(config);
  const Field u0 = make_initial_datum(config, grid);
  const TimeGrid times(0.0, config.horizon, config.nt);
  const Trajectory traj = nls_solve(u0, nullptr, times, Direction::forward);

  for (const std::string& name : write_trajectory(out.directory(), "state", traj,
                                                  config.frame_stride)) {
    out.record(name);
  }
  write_norm_bundle_json(out.directory() / "norms.json", norm_bundle(traj));
  out.record("norms.json");
  write_spectrum_csv(out.directory() / "u0_spectrum.csv", u0);
  out.record("u0_spectrum.csv");

  // Duhamel fixed-point cross-check whenever the datum sits in its regime.
  bool picard_ok = true;
  if (sobolev_norm(u0, 1.0) <= config.smallness_delta) {
    PicardOptions options;
    options.tol = config.tol_picard;
    options.smallness = config.smallness_delta;
    const PicardResult picard = picard_solve(u0, nullptr, times, options);
    double gap = 0.0;
    for (int m = 0; m <= times.nt; ++m) {
      gap = std::max(gap, sobolev_norm(picard.trajectory.frame(m) - traj.frame(m), 0.0));
    }
    const double scale = std::max(sobolev_norm(u0, 0.0), 1e-300);
    nlohmann::json j;
    j["iterations"] = picard.iterations;
    j["increments"] = picard.increments;
    j["ratios"] = picard.ratios;
    j["sup_l2_gap_vs_split"] = gap;
    j["sup_l2_gap_relative"] = gap / scale;
    write_json(out, "picard.json", j);
    picard_ok = gap / scale <= 1e-5;
    log << "simulate: picard cross-check gap " << gap / scale << " relative\n";
  }

  const double mass0 = sobolev_norm(u0, 0.0);
  std::vector<std::vector<double>> rows;
  std::vector<double> ts;
  std::vector<double> drifts;
  double max_drift = 0.0;
  for (int m = 0; m <= times.nt; ++m) {
    const double mass = sobolev_norm(traj.frame(m), 0.0);
    const double drift = mass0 > 0.0 ? std::abs(mass / mass0 - 1.0) : 0.0;
    max_drift = std::max(max_drift, drift);
    rows.push_back({times.node(m), mass, drift});
    ts.push_back(times.node(m));
    drifts.push_back(drift);
  }
  write_csv(out.directory() / "mass.csv", {"t", "l2_norm", "relative_drift"}, rows);
  out.record("mass.csv");
  write_svg_line_plot(out.directory() / "mass_drift.svg", "relative mass drift", ts, drifts);
  out.record("mass_drift.svg");

  log << "simulate: max relative mass drift " << max_drift << '\n';
  return max_drift <= 1e-6 && picard_ok;
}

bool run_hum(const RunConfig& config, ArtifactWriter& out, std::ostream& log) {
  const Grid grid = make_grid_from(config);
  const Field u0 = make_initial_datum(config, grid);
  HumProblem problem(grid, build_cutoff(grid, config.radius), config.horizon, config.nt, u0);
  const HumSolution solution = hum_solve(problem, config.tol_cg, config.cg_max_iter);

  write_field(out.directory() / "cutoff.qcf", problem.phi.field());
  out.record("cutoff.qcf");
  write_field(out.directory() / "minimizer.qcf", solution.minimizer);
  out.record("minimizer.qcf");
  write_slice_csv(out.directory() / "minimizer_slice.csv", solution.minimizer);
  out.record("minimizer_slice.csv");
  write_spectrum_csv(out.directory() / "minimizer_spectrum.csv", solution.minimizer);
  out.record("minimizer_spectrum.csv");
  for (const std::string& name : write_trajectory(out.directory(), "control", solution.control,
                                                  config.frame_stride)) {
    out.record(name);
  }

  const double u0_norm = sobolev_norm(u0, -1.0);
  const double relative =
      u0_norm > 0.0 ? solution.terminal_residual / u0_norm : solution.terminal_residual;
  nlohmann::json stats;
  stats["cg_iterations"] = solution.cg_iterations;
  stats["cg_residual"] = solution.cg_residual;
  stats["terminal_residual"] = solution.terminal_residual;
  stats["terminal_residual_relative"] = relative;
  stats["u0_h_minus1_norm"] = u0_norm;
  write_json(out, "hum_stats.json", stats);

  log << "hum: cg iterations " << solution.cg_iterations << ", relative terminal residual "
      << relative << '\n';
  return relative <= 1e-3;
}

bool run_nlcontrol(const RunConfig& config, ArtifactWriter& out, std::ostream& log) {
  const Grid grid = make_grid_from(config);
  const Field u0 = make_initial_datum(config, grid);
  HumProblem hum(grid, build_cutoff(grid, config.radius), config.horizon, config.nt, u0);
  NonlinearControlProblem problem(std::move(hum), config.smallness_delta, config.ball_radius);
  problem.tol = config.tol_fixed_point;
  problem.max_iter = config.fixed_point_max_iter;
  problem.cg_max_iter = config.cg_max_iter;
  const ControlResult result = nonlinear_null_control(problem);

  write_field(out.directory() / "cutoff.qcf", problem.hum.phi.field());
  out.record("cutoff.qcf");
  write_field(out.directory() / "phi0.qcf", result.phi0);
  out.record("phi0.qcf");
  write_slice_csv(out.directory() / "phi0_slice.csv", result.phi0);
  out.record("phi0_slice.csv");
  write_spectrum_csv(out.directory() / "phi0_spectrum.csv", result.phi0);
  out.record("phi0_spectrum.csv");
  for (const std::string& name : write_trajectory(out.directory(), "control", result.control,
                                                  config.frame_stride)) {
    out.record(name);
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> ks;
  std::vector<double> increments;
  for (std::size_t k = 0; k < result.iterates.size(); ++k) {
    const double factor = k > 0 ? result.contraction_factors[k - 1] : 0.0;
    rows.push_back({static_cast<double>(k + 1), result.iterates[k], factor,
                    result.claim1_ratio, result.claim2_ratio});
    ks.push_back(static_cast<double>(k + 1));
    increments.push_back(result.iterates[k]);
  }
  write_csv(out.directory() / "iterates.csv",
            {"k", "increment", "contraction_factor", "claim1_ratio", "claim2_ratio"}, rows);
  out.record("iterates.csv");
  if (ks.size() >= 2) {
    write_svg_line_plot(out.directory() / "iterates.svg", "fixed-point increments", ks,
                        increments);
    out.record("iterates.svg");
  }

  const double u0_h1 = sobolev_norm(u0, 1.0);
  const double relative =
      u0_h1 > 0.0 ? result.terminal_residual / u0_h1 : result.terminal_residual;
  bool contracting = true;
  for (double f : result.contraction_factors) contracting = contracting && f < 1.0;

  nlohmann::json stats;
  stats["iterations"] = result.iterations;
  stats["terminal_residual"] = result.terminal_residual;
  stats["terminal_residual_relative"] = relative;
  stats["claim1_ratio"] = result.claim1_ratio;
  stats["claim2_ratio"] = result.claim2_ratio;
  stats["consistency_residual"] = result.consistency_residual;
  stats["contraction_factors"] = result.contraction_factors;
  write_json(out, "nlcontrol_stats.json", stats);

  log << "nlcontrol: " << result.iterations << " iterations, relative terminal residual "
      << relative << '\n';
  return contracting && relative <= 1e-2;
}

bool run_observe(const RunConfig& config, ArtifactWriter& out, std::ostream& log) {
  const Grid grid = make_grid_from(config);
  RadiusSweep sweep;
  if (config.radius_sweep.empty()) {
    sweep = {config.radius, config.radius, 1.0};
  } else {
    sweep = parse_radius_sweep(config.radius_sweep);
  }
  ObservabilityOptions options;
  options.dense_threshold = config.dense_threshold;

  std::vector<std::vector<double>> rows;
  std::vector<double> radii;
  std::vector<double> constants;
  bool positive = true;
  bool monotone = true;
  for (double r = sweep.start; r <= sweep.stop + 1e-12; r += sweep.step) {
    HumProblem problem(grid, build_cutoff(grid, r), config.horizon, config.nt, Field(grid));
    const ObservabilityResult result = observability_constant(problem, options);
    rows.push_back({r, config.horizon, result.c_obs, static_cast<double>(result.iterations)});
    if (!constants.empty() && result.c_obs > constants.back() * (1.0 + 1e-10)) monotone = false;
    positive = positive && result.c_obs > 0.0;
    radii.push_back(r);
    constants.push_back(result.c_obs);
    log << "observe: R = " << r << " -> c_obs = " << result.c_obs << '\n';
  }
  write_csv(out.directory() / "observability.csv", {"R", "T", "c_obs", "lanczos_iters"}, rows);
  out.record("observability.csv");
  if (radii.size() >= 2) {
    write_svg_line_plot(out.directory() / "observability.svg", "observability constant vs R",
                        radii, constants);
    out.record("observability.svg");
  }
  return positive && monotone;
}

bool run_diag(const RunConfig& config, ArtifactWriter& out, std::ostream& log) {
  const DiagnosticConfig cfg = diag_config(config);
  std::vector<DiagnosticReport> reports;
  if (config.diag_name == "all") {
    reports = run_all_diagnostics(cfg);
  } else {
    reports.push_back(run_diagnostic(config.diag_name, cfg));
  }

  bool all_pass = true;
  std::vector<std::vector<double>> summary_rows;
  std::vector<std::string> labels;
  for (const DiagnosticReport& report : reports) {
    write_json(out, "diag_" + report.label + ".json", report_json(report));
    if (!report.refinement_trend.empty()) {
      write_trend_artifacts(out, "diag_" + report.label, report);
    }
    summary_rows.push_back({report.lhs, report.rhs, report.residual_or_ratio,
                            report.pass ? 1.0 : 0.0, report.skipped ? 1.0 : 0.0});
    labels.push_back(report.label);
    all_pass = all_pass && report.pass;
    log << "diag " << report.label << ": " << (report.pass ? "pass" : "FAIL") << " ("
        << report.residual_or_ratio << ")\n";
  }
  if (config.diag_name == "all") {
    // Summary keyed by label; one row per statement.
    std::ofstream os(out.directory() / "summary.csv");
    if (!os) throw io_error("io-error: cannot write summary.csv");
    os << "label,lhs,rhs,residual_or_ratio,pass,skipped\n";
    os.precision(17);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << labels[i];
      for (double v : summary_rows[i]) os << ',' << v;
      os << '\n';
    }
    os.close();
    out.record("summary.csv");
  }
  return all_pass;
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const blowup_error*>(&error) != nullptr) return kExitBlowup;
  if (dynamic_cast<const convergence_error*>(&error) != nullptr) return kExitNoConvergence;
  if (dynamic_cast<const io_error*>(&error) != nullptr) return kExitIo;
  if (dynamic_cast<const invalid_argument_error*>(&error) != nullptr) return kExitConfig;
  return kExitConfig;
}

RunManifest run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log) {
  config.validate();
  RunManifest manifest;
  manifest.subcommand = name;
  manifest.version = kVersion;
  manifest.config_echo = config_to_string(config);
  manifest.started_at = timestamp_utc();

  ArtifactWriter out(config.output_dir);
  bool pass = false;
  std::string failure;
  int failure_code = kExitOk;
  try {
    if (name == "simulate") {
      pass = run_simulate(config, out, log);
    } else if (name == "hum") {
      pass = run_hum(config, out, log);
    } else if (name == "nlcontrol") {
      pass = run_nlcontrol(config, out, log);
    } else if (name == "observe") {
      pass = run_observe(config, out, log);
    } else if (name == "diag") {
      pass = run_diag(config, out, log);
    } else {
      throw invalid_config_error("unknown subcommand: " + name);
    }
  } catch (const std::exception& error) {
    failure = error.what();
    failure_code = exit_code_for(error);
  }

  manifest.files = out.take();
  manifest.verdicts[name] = pass && failure.empty();
  manifest.exit_code = !failure.empty() ? failure_code : (pass ? kExitOk : kExitNoConvergence);
  manifest.finished_at = timestamp_utc();

  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["version"] = manifest.version;
  j["config"] = manifest.config_echo;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["exit_code"] = manifest.exit_code;
  if (!failure.empty()) j["error"] = failure;
  j["verdicts"] = manifest.verdicts;
  j["files"] = nlohmann::json::array();
  for (const FileRecord& rec : manifest.files) {
    j["files"].push_back({{"name", rec.name}, {"bytes", rec.bytes}, {"checksum", rec.checksum}});
  }
  {
    std::ofstream os(std::filesystem::path(config.output_dir) / "manifest.json");
    if (!os) throw io_error("io-error: cannot write manifest");
    os << j.dump(2) << '\n';
  }

  if (!failure.empty()) {
    log << name << " failed: " << failure << '\n';
    if (failure_code == kExitBlowup) throw blowup_error(failure);
    if (failure_code == kExitNoConvergence) throw convergence_error(failure);
    if (failure_code == kExitIo) throw io_error(failure);
    throw invalid_config_error(failure);
  }
  return manifest;
}

}  // namespace qcontrol
