#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcontrol/diagnostics.hpp"
#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"
#include "qcontrol/propagators.hpp"
#include "qcontrol/rng.hpp"
#include "qcontrol/spectral.hpp"

using namespace qcontrol;

namespace {

DiagnosticConfig desk_config() { return DiagnosticConfig{}; }

Field plane_wave(const Grid& grid, int mode, cplx amplitude = 1.0) {
  std::vector<cplx> coeffs(grid.size(), cplx(0.0, 0.0));
  coeffs[static_cast<std::size_t>(mode >= 0 ? mode : mode + grid.n())] = amplitude;
  return field_from_coefficients(grid, coeffs);
}

}  // namespace

TEST_CASE("conservation diagnostic sits at rounding level") {
  const DiagnosticReport report = conservation_check(desk_config());
  CHECK(report.pass);
  CHECK(report.residual_or_ratio < 1e-12);
  CHECK(report.label == "c28");
}

TEST_CASE("smoothing identity holds to 1e-8 for concentrated Gaussians") {
  const DiagnosticReport report = smoothing_check(desk_config());
  CHECK(report.pass);
  CHECK(report.residual_or_ratio <= 1e-8);
  CHECK(report.label == "App1");
}

TEST_CASE("smoothing check on explicit data: ratio one at t = 0") {
  const Grid grid(1, 256, 20.0);
  Field psi(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.coordinate(grid.unravel(i)[0]);
    psi[i] = std::exp(-x * x / 2.0);
  }
  const DiagnosticReport report = smoothing_check(psi, {1, 0, 0}, 1e-9);
  // horizon ~ 0: the operator reduces to coordinate multiplication
  CHECK(report.residual_or_ratio <= 1e-8);
  CHECK(report.lhs == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(smoothing_check(psi, {0, 0, 0}, 0.5), invalid_argument_error);
  CHECK_THROWS_AS(smoothing_check(psi, {3, 0, 0}, 0.5), invalid_argument_error);
  CHECK_THROWS_AS(smoothing_check(psi, {0, 1, 0}, 0.5), invalid_argument_error);
}

TEST_CASE("smoothing identity composes to order two in three dimensions") {
  const Grid grid(3, 64, 12.0);
  Field psi(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.radius_at(i);
    psi[i] = std::exp(-r * r / (2.0 * 0.8 * 0.8));
  }
  const DiagnosticReport first = smoothing_check(psi, {0, 1, 0}, 0.1);
  CHECK(first.residual_or_ratio <= 1e-8);
  const DiagnosticReport mixed = smoothing_check(psi, {1, 0, 1}, 0.1);
  CHECK(mixed.residual_or_ratio <= 1e-7);
}

TEST_CASE("multiplier identity: zero data and single modes cancel exactly") {
  const Grid grid(1, 64, 8.0);
  const MultiplierQ q = build_multiplier(grid, 2.0);
  const TimeGrid times(0.0, 2.0, 64);

  const DiagnosticReport zero = multiplier_identity_residual(Field(grid), times, q);
  CHECK(zero.residual_or_ratio == 0.0);
  CHECK(zero.skipped);

  // single mode: every term in the identity is time-independent and the sum
  // cancels to rounding regardless of nt
  const DiagnosticReport mode =
      multiplier_identity_residual(plane_wave(grid, 2, cplx(0.7, 0.3)), times, q);
  CHECK(mode.residual_or_ratio < 1e-12);
}

TEST_CASE("multiplier identity residual decays at second order in dt") {
  DiagnosticConfig cfg = desk_config();
  const DiagnosticReport report = multiplier_identity_check(cfg);
  CHECK(report.pass);
  CHECK(report.residual_or_ratio <= 1e-4);
  REQUIRE(report.refinement_trend.size() >= 3);
  for (std::size_t i = 1; i < report.refinement_trend.size(); ++i) {
    CHECK(report.refinement_trend[i - 1].value / report.refinement_trend[i].value >= 3.5);
  }
}

TEST_CASE("homogeneous bound: single modes give the closed-form ratio") {
  // |e^{it Lap} h| is constant for a plane wave, so the mixed norm factors
  const Grid grid(1, 64, 8.0);
  const TimeGrid times(0.0, 2.0, 128);
  const double q = 10.0;
  const double r = 30.0 / 13.0;
  const cplx amplitude(0.4, -0.2);
  const Field h = plane_wave(grid, 3, amplitude);
  const Trajectory traj = free_flow_trajectory(h, times);
  const double measured = mixed_norm(traj, q, r, false) / sobolev_norm(h, 0.0);
  const double box = grid.box_measure();
  const double expected = std::pow(box, 1.0 / r) * std::pow(times.length(), 1.0 / q) *
                          std::pow(box, -0.5);
  CHECK(measured == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("strichartz diagnostic: finite, stable, and admissibility-guarded") {
  DiagnosticConfig cfg = desk_config();
  cfg.sweep = true;
  cfg.n = 32;
  cfg.nt = 64;
  const AdmissiblePair pair{10.0, 30.0 / 13.0, PairKind::l2_admissible};
  const DiagnosticReport report = strichartz_sample(cfg, pair, 16);
  CHECK(report.pass);
  REQUIRE(report.refinement_trend.size() == 2);
  CHECK(report.refinement_trend[1].value <= 2.0 * report.refinement_trend[0].value);

  CHECK_THROWS_AS(
      strichartz_sample(cfg, AdmissiblePair{8.0, 30.0 / 13.0, PairKind::l2_admissible}, 4),
      invalid_argument_error);
}

TEST_CASE("inhomogeneous bound: solver matches the per-mode closed form") {
  const Grid grid(1, 64, 8.0);
  const TimeGrid times(0.0, 2.0, 256);
  const int mode = 1;
  const double k2 = std::pow(grid.wavenumber(mode), 2);
  const Field shape = plane_wave(grid, mode);
  std::vector<Field> frames(static_cast<std::size_t>(times.nt) + 1, shape);
  const Trajectory source(times, std::move(frames));
  const Trajectory solved = forced_linear_solve(Field(grid), &source, times, Direction::forward);

  std::vector<Field> exact_frames;
  for (int m = 0; m <= times.nt; ++m) {
    Field f = shape;
    f *= oracle::mode_duhamel_amplitude(k2, 1.0, times.node(m));
    exact_frames.push_back(std::move(f));
  }
  const Trajectory exact(times, std::move(exact_frames));

  const double solver_norm = mixed_norm(solved, 10.0, 30.0 / 13.0, false);
  const double exact_norm = mixed_norm(exact, 10.0, 30.0 / 13.0, false);
  CHECK(solver_norm == doctest::Approx(exact_norm).epsilon(1e-6));
}

TEST_CASE("inhomogeneous diagnostic is finite and refinement-stable") {
  DiagnosticConfig cfg = desk_config();
  cfg.sweep = true;
  cfg.n = 32;
  cfg.nt = 64;
  const DiagnosticReport report = inhomogeneous_strichartz_sample(cfg, 8);
  CHECK(report.pass);
}

TEST_CASE("embedding diagnostic: closed form on modes, skip on constants") {
  const Grid grid(1, 64, 8.0);
  const TimeGrid times(0.0, 2.0, 64);

  const int mode = 2;
  const Field h = plane_wave(grid, mode, cplx(0.0, 0.8));
  const DiagnosticReport on_mode = embedding_sample(free_flow_trajectory(h, times));
  const double k = std::abs(grid.wavenumber(mode));
  const double expected = std::pow(grid.box_measure(), -1.0 / 3.0) / k;
  CHECK(on_mode.residual_or_ratio == doctest::Approx(expected).epsilon(1e-10));

  Field constant(grid);
  for (cplx& v : constant.values()) v = cplx(0.3, 0.1);
  const DiagnosticReport on_constant = embedding_sample(free_flow_trajectory(constant, times));
  CHECK(on_constant.skipped);

  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const DiagnosticReport sweep = embedding_sweep(cfg, 16);
  CHECK(sweep.pass);
}

TEST_CASE("weak observability: support separation and dead-zone structure") {
  const Grid grid(1, 128, 16.0);
  const double radius = 2.0;
  HumProblem problem(grid, build_cutoff(grid, radius), 2.0, 128, Field(grid));

  // datum supported where 1 - phi(x/2) vanishes: the compact term is ~0 and
  // the observed term carries the bound alone
  Field outside(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.radius_at(i);
    outside[i] = r >= 2.0 * radius + 2.0 ? std::exp(-0.5 * (r - 9.0) * (r - 9.0)) : 0.0;
  }
  const DiagnosticReport separated = weak_observability_check(outside, problem);
  CHECK(separated.pass);
  const CutoffPhi dilated = build_dilated_cutoff(grid, radius);
  const Field windowed = multiply_complement(dilated, outside);
  CHECK(sobolev_norm(windowed, -2.0) <= 1e-10 * sobolev_norm(outside, 0.0));

  // datum in the dead zone: for a short horizon the compact term dominates
  Field inside(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.radius_at(i);
    inside[i] = std::exp(-4.0 * r * r);
  }
  HumProblem short_problem(grid, build_cutoff(grid, radius), 0.05, 16, Field(grid));
  const double observed = gramian_form(inside, inside, short_problem);
  const double compact = std::pow(sobolev_norm(multiply_complement(dilated, inside), -2.0), 2);
  CHECK(compact > observed);
}

TEST_CASE("weak observability sweep is finite and bounded") {
  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const DiagnosticReport report = weak_observability_sweep(cfg, 32);
  CHECK(report.pass);
  CHECK(report.residual_or_ratio > 0.0);
}

TEST_CASE("H1 observation sweep is finite") {
  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const DiagnosticReport report = h1_observability_sweep(cfg, 32);
  CHECK(report.pass);
}

TEST_CASE("reports are reproducible from (seed, config)") {
  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const DiagnosticReport a = strichartz_sample(
      cfg, AdmissiblePair{10.0, 30.0 / 13.0, PairKind::l2_admissible}, 8);
  const DiagnosticReport b = strichartz_sample(
      cfg, AdmissiblePair{10.0, 30.0 / 13.0, PairKind::l2_admissible}, 8);
  CHECK(a.residual_or_ratio == b.residual_or_ratio);
  CHECK(a.inputs_digest == b.inputs_digest);

  cfg.seed = 43;
  const DiagnosticReport c = strichartz_sample(
      cfg, AdmissiblePair{10.0, 30.0 / 13.0, PairKind::l2_admissible}, 8);
  CHECK(c.inputs_digest != a.inputs_digest);
}

TEST_CASE("sweep results are independent of the worker schedule") {
  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const AdmissiblePair pair{10.0, 30.0 / 13.0, PairKind::l2_admissible};
  setenv("QCONTROL_THREADS", "1", 1);
  const DiagnosticReport serial = strichartz_sample(cfg, pair, 12);
  setenv("QCONTROL_THREADS", "4", 1);
  const DiagnosticReport threaded = strichartz_sample(cfg, pair, 12);
  unsetenv("QCONTROL_THREADS");
  CHECK(serial.residual_or_ratio == threaded.residual_or_ratio);
  CHECK(serial.rhs == threaded.rhs);
}

TEST_CASE("the full battery covers the eight statement labels") {
  DiagnosticConfig cfg = desk_config();
  cfg.n = 32;
  cfg.nt = 64;
  const std::vector<DiagnosticReport> reports = run_all_diagnostics(cfg);
  REQUIRE(reports.size() == 8);
  const std::vector<std::string> expected{"c28", "App1", "c27", "item_i",
                                          "item_ii", "sobolev", "c26", "c3"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(reports[i].label == expected[i]);
  }
  CHECK_THROWS_AS(run_diagnostic("nonsense", cfg), invalid_argument_error);
}
