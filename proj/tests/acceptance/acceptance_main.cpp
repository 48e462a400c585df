// Acceptance suite: one quantitative criterion per line, every tolerance
// pinned in code.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcontrol/diagnostics.hpp"
#include "qcontrol/nonlinear_control.hpp"
#include "qcontrol/rng.hpp"
#include "qcontrol/runner.hpp"
#include "qcontrol/spectral.hpp"

using namespace qcontrol;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> run;
};

Field gaussian_bump(const Grid& grid, double center, double width, double h1_norm) {
  Field f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto bins = grid.unravel(i);
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double x = grid.coordinate(bins[static_cast<std::size_t>(a)]) -
                       (a == 0 ? center : 0.0);
      r2 += x * x;
    }
    f[i] = std::exp(-r2 / (2.0 * width * width));
  }
  f *= h1_norm / sobolev_norm(f, 1.0);
  return f;
}

Field ball_sample(const Grid& grid, std::uint64_t seed, double radius) {
  SeededRng rng = SeededRng(seed).substream("acceptance");
  Field f = random_band_limited_field(grid, 8, rng, false);
  f *= radius / sobolev_norm(f, -1.0);
  return f;
}

HumProblem criterion6_problem() {
  Grid grid(1, 64, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  Field u0 = gaussian_bump(grid, 4.0, 0.7, 0.01);
  return HumProblem(std::move(grid), std::move(phi), 2.0, 512, std::move(u0));
}

// 1. Free-flow conservation: H^1 and H^{-1} norms constant to 1e-12 relative
//    over T = 2 at d = 1, n = 64, nt = 256.
bool criterion_conservation(std::string& detail) {
  const Grid grid(1, 64, 8.0);
  SeededRng rng = SeededRng(42).substream("acc-c1");
  Field w0 = random_band_limited_field(grid, 10, rng, false);
  w0 *= 1.0 / sobolev_norm(w0, 0.0);
  const Trajectory traj = free_flow_trajectory(w0, TimeGrid(0.0, 2.0, 256));
  const double h1 = sobolev_norm(w0, 1.0);
  const double hm1 = sobolev_norm(w0, -1.0);
  double drift = 0.0;
  for (int m = 0; m <= 256; ++m) {
    drift = std::max(drift, std::abs(sobolev_norm(traj.frame(m), 1.0) / h1 - 1.0));
    drift = std::max(drift, std::abs(sobolev_norm(traj.frame(m), -1.0) / hm1 - 1.0));
  }
  std::ostringstream os;
  os << "max relative drift " << drift;
  detail = os.str();
  return drift <= 1e-12;
}

// 2. Smoothing identity for a centered Gaussian with tail mass < 1e-10 at
//    t in {0.1, 0.5}: relative H^1 residual <= 1e-8.
bool criterion_smoothing(std::string& detail) {
  const Grid grid(1, 256, 20.0);
  Field psi(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(grid.unravel(i)[0]);
    psi[i] = std::exp(-x * x / 2.0);
  }
  Field weighted(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    weighted[i] = grid.coordinate(grid.unravel(i)[0]) * psi[i];
  }
  double tail = coordinate_tail_fraction(free_flow(psi, 0.5), 0);
  double residual = 0.0;
  for (double t : {0.1, 0.5}) {
    const Field lhs = apply_coordinate_op(free_flow(psi, t), 0, t);
    const Field rhs = free_flow(weighted, t);
    residual = std::max(residual, sobolev_norm(lhs - rhs, 1.0) / sobolev_norm(rhs, 1.0));
  }
  std::ostringstream os;
  os << "residual " << residual << ", evolved tail fraction " << tail;
  detail = os.str();
  return residual <= 1e-8 && tail < 1e-10;
}

// 3. Multiplier identity: relative residual <= 1e-4 at the desk
//    configuration, decreasing at order >= 2 across three dt halvings.
bool criterion_multiplier(std::string& detail) {
  DiagnosticConfig cfg;
  const DiagnosticReport report = multiplier_identity_check(cfg);
  std::ostringstream os;
  os << "residual " << report.residual_or_ratio << ";" << report.note;
  detail = os.str();
  if (!(report.residual_or_ratio <= 1e-4)) return false;
  for (std::size_t i = 1; i < report.refinement_trend.size(); ++i) {
    if (report.refinement_trend[i - 1].value / report.refinement_trend[i].value < 3.5) {
      return false;
    }
  }
  return report.refinement_trend.size() >= 3;
}

// 4. Gramian structure at d = 1, n = 64: symmetry and positivity to 1e-8 on
//    32 random pairs; coercivity identity to 1e-6 relative.
bool criterion_gramian(std::string& detail) {
  Grid grid(1, 64, 8.0);
  HumProblem problem(grid, build_cutoff(grid, 2.0), 2.0, 256, Field(grid));
  double worst_symmetry = 0.0;
  double worst_coercivity = 0.0;
  bool positive = true;
  for (std::uint64_t s = 0; s < 32; ++s) {
    const Field v = ball_sample(grid, 2 * s, 1.0);
    const Field w = ball_sample(grid, 2 * s + 1, 1.0);
    const double ab = hs_inner(w, gamma_apply(v, problem), 0.0);
    const double ba = hs_inner(v, gamma_apply(w, problem), 0.0);
    const double scale = std::abs(ab) + std::abs(ba);
    worst_symmetry = std::max(worst_symmetry, std::abs(ab - ba) / scale);
    const double form = gramian_form(v, v, problem);
    positive = positive && form >= 0.0;
    const double op = hs_inner(v, gamma_apply(v, problem), 0.0);
    worst_coercivity = std::max(worst_coercivity, std::abs(op - form) / form);
  }
  std::ostringstream os;
  os << "symmetry " << worst_symmetry << ", coercivity " << worst_coercivity;
  detail = os.str();
  return positive && worst_symmetry <= 1e-8 && worst_coercivity <= 1e-6;
}

// 5. Dense-oracle equivalence at d = 1, n = 32: minimizer matches the dense
//    assembled-Gramian solve to 1e-6 relative.
bool criterion_dense(std::string& detail) {
  Grid grid(1, 32, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  Field u0 = gaussian_bump(grid, 4.0, 0.7, 0.01);
  HumProblem problem(std::move(grid), std::move(phi), 2.0, 256, std::move(u0));
  const HumSolution solution = hum_solve(problem, 1e-10, 400);
  const Field dense =
      oracle::dense_gramian_solve(problem, cplx(0.0, -1.0) * problem.target_initial);
  const double err =
      sobolev_norm(solution.minimizer - dense, -1.0) / sobolev_norm(dense, -1.0);
  std::ostringstream os;
  os << "relative error " << err;
  detail = os.str();
  return err <= 1e-6;
}

// 6. Linear null control at d = 1, n = 64, nt = 512, T = 2, R = 2:
//    forward verification reaches 1e-3 relative in H^{-1}.
bool criterion_linear_control(std::string& detail) {
  const HumProblem problem = criterion6_problem();
  const HumSolution solution = hum_solve(problem, 1e-8, 400);
  const double relative =
      solution.terminal_residual / sobolev_norm(problem.target_initial, -1.0);
  std::ostringstream os;
  os << "terminal residual " << relative << " after " << solution.cg_iterations
     << " cg iterations";
  detail = os.str();
  return relative <= 1e-3;
}

// 7. Duality identity on the synthesized control of criterion 6: the two
//    independently computed sides agree to 1e-6 relative.
bool criterion_duality(std::string& detail) {
  const HumProblem problem = criterion6_problem();
  const HumSolution solution = hum_solve(problem, 1e-8, 400);
  const Field& v0 = solution.minimizer;

  // side A: pairing of the adjoint datum with -i u0
  const double side_a = hs_inner(v0, cplx(0.0, -1.0) * problem.target_initial, 0.0);

  // side B: time quadrature of <phi v, h> along the emitted control frames
  const Trajectory v = adjoint_flow(v0, problem.times());
  const double dt = problem.times().dt();
  double side_b = 0.0;
  for (int m = 0; m <= problem.nt; ++m) {
    const double weight = (m == 0 || m == problem.nt) ? 0.5 * dt : dt;
    side_b += weight *
              hs_inner(multiply(problem.phi, v.frame(m)), solution.control.frame(m), 0.0);
  }
  const double rel = std::abs(side_a - side_b) / std::abs(side_b);
  std::ostringstream os;
  os << "sides " << side_a << " vs " << side_b << ", relative gap " << rel;
  detail = os.str();
  return rel <= 1e-6;
}

// 8. Nonlinear fixed point at ||u0||_{H^1} = 0.01 on the criterion-6
//    configuration: contraction factors < 1, terminal H^1 residual <= 1e-2
//    relative on the verified quintic forward solve.
bool criterion_nonlinear(std::string& detail) {
  Grid grid(1, 64, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  Field u0 = gaussian_bump(grid, 4.0, 0.7, 0.01);
  HumProblem hum(std::move(grid), std::move(phi), 2.0, 512, std::move(u0));
  NonlinearControlProblem problem(std::move(hum), 0.05, 0.5);
  const ControlResult result = nonlinear_null_control(problem);
  bool contracting = true;
  double worst = 0.0;
  for (double f : result.contraction_factors) {
    contracting = contracting && f < 1.0;
    worst = std::max(worst, f);
  }
  const double relative =
      result.terminal_residual / sobolev_norm(problem.hum.target_initial, 1.0);
  std::ostringstream os;
  os << result.iterations << " iterations, worst factor " << worst
     << ", terminal residual " << relative;
  detail = os.str();
  return contracting && relative <= 1e-2;
}

// 9. Contraction scaling: halving the probe-ball radius shrinks the measured
//    Lipschitz ratio by a factor in [8, 32].
bool criterion_contraction_scaling(std::string& detail) {
  Grid grid(1, 64, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  HumProblem hum(std::move(grid), std::move(phi), 2.0, 256, Field(Grid(1, 64, 8.0)));
  NonlinearControlProblem problem(std::move(hum), 0.05, 0.5);

  auto probe = [&](double radius) {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      const Field a = ball_sample(problem.hum.grid, 60 + 2 * s, radius);
      const Field b = ball_sample(problem.hum.grid, 61 + 2 * s, radius);
      worst = std::max(worst, lipschitz_ratio(problem, a, b));
    }
    return worst;
  };
  const double coarse = probe(0.2);
  const double fine = probe(0.1);
  const double shrink = coarse / fine;
  std::ostringstream os;
  os << "ratio(0.2) = " << coarse << ", ratio(0.1) = " << fine << ", shrink " << shrink;
  detail = os.str();
  return shrink >= 8.0 && shrink <= 32.0;
}

// 10. Quintic smallness: the correction datum scales at order 5.0 +- 0.5
//     under amplitude halving.
bool criterion_quintic_order(std::string& detail) {
  Grid grid(1, 64, 8.0);
  CutoffPhi phi = build_cutoff(grid, 2.0);
  HumProblem hum(std::move(grid), std::move(phi), 2.0, 256, Field(Grid(1, 64, 8.0)));
  NonlinearControlProblem problem(std::move(hum), 0.05, 0.5);
  const Field direction = ball_sample(problem.hum.grid, 77, 1.0);
  std::vector<double> norms;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    Field phi0 = direction;
    phi0 *= eps;
    norms.push_back(sobolev_norm(solve_coupled_pair(phi0, problem).v0, 1.0));
  }
  std::ostringstream os;
  os << "orders";
  bool ok = true;
  for (std::size_t i = 1; i < norms.size(); ++i) {
    const double order = std::log2(norms[i - 1] / norms[i]);
    os << ' ' << order;
    ok = ok && std::abs(order - 5.0) <= 0.5;
  }
  detail = os.str();
  return ok;
}

// 11. Observability sanity with the dense oracle at n = 32: c_obs = T to
//     1e-8 under full observation; positive and non-increasing along an
//     R-sweep with the standard cutoff.
bool criterion_observability(std::string& detail) {
  Grid grid(1, 32, 8.0);
  HumProblem full(grid, build_cutoff(grid, 0.0), 2.0, 64, Field(grid));
  const ObservabilityResult degenerate = observability_constant(full);
  const double gap = std::abs(degenerate.c_obs - 2.0) / 2.0;

  bool positive = true;
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "c_obs(phi=1) = " << degenerate.c_obs << "; sweep";
  for (double radius : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    HumProblem problem(grid, build_cutoff(grid, radius), 2.0, 64, Field(grid));
    const ObservabilityResult result = observability_constant(problem);
    os << ' ' << result.c_obs;
    positive = positive && result.c_obs > 0.0;
    monotone = monotone && result.c_obs <= previous * (1.0 + 1e-10);
    previous = result.c_obs;
  }
  detail = os.str();
  return gap <= 1e-8 && positive && monotone;
}

// 12. Determinism: two runs of the full diagnostic battery with seed 42
//     produce identical output checksums.
bool criterion_determinism(std::string& detail) {
  RunConfig config;
  config.n = 32;
  config.nt = 64;
  config.seed = 42;
  std::ostringstream log;

  auto run_into = [&](const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("qcontrol_acc_" + tag);
    std::filesystem::remove_all(dir);
    config.output_dir = dir.string();
    const RunManifest manifest = run_subcommand("diag", config, log);
    std::filesystem::remove_all(dir);
    return manifest;
  };
  const RunManifest first = run_into("a");
  const RunManifest second = run_into("b");
  if (first.files.size() != second.files.size()) {
    detail = "file counts differ";
    return false;
  }
  for (std::size_t i = 0; i < first.files.size(); ++i) {
    if (first.files[i].name != second.files[i].name ||
        first.files[i].checksum != second.files[i].checksum) {
      detail = "checksum mismatch on " + first.files[i].name;
      return false;
    }
  }
  std::ostringstream os;
  os << first.files.size() << " artifacts, checksums identical";
  detail = os.str();
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "free-flow conservation (H^1, H^{-1}) to 1e-12", criterion_conservation},
      {2, "coordinate smoothing identity to 1e-8", criterion_smoothing},
      {3, "multiplier identity residual <= 1e-4 at order >= 2", criterion_multiplier},
      {4, "Gramian symmetry/positivity 1e-8, coercivity 1e-6", criterion_gramian},
      {5, "dense Gramian equivalence to 1e-6", criterion_dense},
      {6, "linear null control terminal residual <= 1e-3", criterion_linear_control},
      {7, "duality identity to 1e-6 on the synthesized control", criterion_duality},
      {8, "nonlinear fixed point: contraction and 1e-2 verification", criterion_nonlinear},
      {9, "contraction ratio shrinks 16x (within [8,32]) per radius halving",
       criterion_contraction_scaling},
      {10, "quintic correction order 5.0 +- 0.5", criterion_quintic_order},
      {11, "observability: c_obs = T under full observation; R-sweep monotone",
       criterion_observability},
      {12, "determinism of the diagnostic battery at seed 42", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& error) {
      detail = std::string("exception: ") + error.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s (%s) [%.2fs]\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.title.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
