#pragma once

#include "qcontrol/norms.hpp"
#include "qcontrol/trajectory.hpp"

namespace qcontrol {

enum class Direction { forward, backward };

/// Exact free Schroedinger flow: multiplier e^{-i t |k|^2}.  Unitary on every
/// H^s and satisfies the group law exactly.
Field free_flow(const Field& psi, double t);

/// Free flow sampled on all nodes of a time grid (data at t0).
Trajectory free_flow_trajectory(const Field& data, const TimeGrid& times);

/// i du/dt + Lap u = S with S given on the time nodes (nullptr for S = 0).
///
/// Forward stepping is the second-order exponential midpoint rule
///   u_{m+1} = E_dt u_m - i dt E_{dt/2} (S_m + S_{m+1}) / 2,
/// which reduces to the exact free flow per step when S = 0.  Direction
/// backward takes `data` at t1 and runs the conjugated, time-reversed
/// equation through the same kernel, so a forward/backward round trip
/// reproduces the data to rounding.
Trajectory forced_linear_solve(const Field& data, const Trajectory* source,
                               const TimeGrid& times, Direction direction);

struct NlsOptions {
  int power = 4;                   // |u|^power u, defocusing
  double blowup_threshold = 1e6;   // max sample magnitude before aborting
  bool dealias = true;             // truncate to |m| <= n/3 after each phase
};

/// i du/dt + Lap u - |u|^4 u = S (S given on nodes; nullptr for none).
///
/// Strang splitting: half-step defocusing phase u <- u e^{-i (dt/2) |u|^4},
/// full free-flow step, half-step phase; a source contributes the same
/// midpoint-propagated increment as forced_linear_solve, so the two solvers
/// agree exactly in the linear limit.  Throws blowup_error when a sample
/// magnitude crosses the threshold.
Trajectory nls_solve(const Field& data, const Trajectory* control, const TimeGrid& times,
                     Direction direction, const NlsOptions& options = {});

struct PicardOptions {
  double tol = 1e-9;        // stop when the triple-norm increment drops below
  int max_iter = 50;
  double smallness = 0.1;   // admissible ||u0||_{H^1}
  int power = 4;
};

struct PicardResult {
  Trajectory trajectory;
  NormBundle norms;
  std::vector<double> increments;  // |||u^{j+1} - u^j||| per iteration
  std::vector<double> ratios;      // successive increment ratios
  int iterations = 0;
};

/// Duhamel fixed-point iteration for i du/dt + Lap u - |u|^4 u = g with
/// trapezoidal quadrature on the time nodes.  Throws convergence_error when
/// the iteration stops contracting or max_iter is reached.
PicardResult picard_solve(const Field& u0, const Trajectory* g, const TimeGrid& times,
                          const PicardOptions& options = {});

}  // namespace qcontrol
