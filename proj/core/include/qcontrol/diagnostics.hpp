#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "qcontrol/hum.hpp"
#include "qcontrol/rng.hpp"

namespace qcontrol {

struct RefinementPoint {
  int n = 0;
  int nt = 0;
  double value = 0.0;
};

/// One empirically checked statement: the two sides (or the residual/ratio
/// summary), a refinement trend, and a verdict against the statement-specific
/// tolerance.  `label` is the stable row key used by summary tables.
struct DiagnosticReport {
  std::string name;
  std::string label;
  std::string inputs_digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual_or_ratio = 0.0;
  std::vector<RefinementPoint> refinement_trend;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct DiagnosticConfig {
  int dimension = 1;
  int n = 64;
  double half_side = 8.0;
  double radius = 2.0;
  double horizon = 2.0;
  int nt = 256;
  std::uint64_t seed = 42;
  bool sweep = false;  // add a refinement doubling to the trend
};

/// Free-flow conservation of the H^1 and H^{-1} norms (machine-level).
DiagnosticReport conservation_check(const DiagnosticConfig& cfg);

/// Commutation identity for the coordinate-weighted operators: the evolved
/// field satisfies (x_j + 2it d_j)..., composed per multi-index entry, and
/// equals the free flow of x^alpha psi.  Reports the worst relative H^1
/// residual over the sampled times plus the norm ratio bound.
DiagnosticReport smoothing_check(const Field& psi, const std::array<int, 3>& alpha,
                                 double horizon);
DiagnosticReport smoothing_check(const DiagnosticConfig& cfg);

/// Three-term space-time identity obtained from the compactly supported
/// vector multiplier; the terms must cancel up to time-quadrature error.
DiagnosticReport multiplier_identity_residual(const Field& w0, const TimeGrid& times,
                                              const MultiplierQ& q);
DiagnosticReport multiplier_identity_check(const DiagnosticConfig& cfg);

/// Homogeneous space-time bound sampling: mixed norm of the free flow against
/// the L^2 norm of the datum, over seeded band-limited draws.
DiagnosticReport strichartz_sample(const DiagnosticConfig& cfg, const AdmissiblePair& pair,
                                   int n_samples);

/// Inhomogeneous variant through the forced solver, including the per-mode
/// closed-form cross-check.
DiagnosticReport inhomogeneous_strichartz_sample(const DiagnosticConfig& cfg, int n_samples);

/// Space-time embedding ratio ||u||_{L^10 L^10} / ||grad u||_{L^10 L^{30/13}}.
DiagnosticReport embedding_sample(const Trajectory& traj);
DiagnosticReport embedding_sweep(const DiagnosticConfig& cfg, int n_samples);

/// Ratio sampling for the H^1 observation bound over seeded draws.
DiagnosticReport h1_observability_sweep(const DiagnosticConfig& cfg, int n_samples);

/// Weak observability: smallest C with
/// ||v0||^2_{H^{-1}} <= C ( int ||phi v||^2_{H^{-1}} dt + ||(1-phi(x/2)) v0||^2_{H^{-2}} ).
DiagnosticReport weak_observability_check(const Field& v0, const HumProblem& problem);
DiagnosticReport weak_observability_sweep(const DiagnosticConfig& cfg, int n_samples);

/// The full battery in summary-table order.
std::vector<DiagnosticReport> run_all_diagnostics(const DiagnosticConfig& cfg);

/// Single diagnostic by label or name; throws invalid_argument_error on an
/// unknown key.
DiagnosticReport run_diagnostic(const std::string& key, const DiagnosticConfig& cfg);

}  // namespace qcontrol
