#pragma once

#include <functional>

#include "qcontrol/geometry.hpp"
#include "qcontrol/propagators.hpp"

namespace qcontrol {

/// Linear null-control problem: steer i du/dt + Lap u = phi h from
/// `target_initial` at t = 0 to zero at t = horizon.
struct HumProblem {
  Grid grid;
  CutoffPhi phi;
  double horizon = 0.0;
  int nt = 0;
  Field target_initial;

  HumProblem(Grid grid_in, CutoffPhi phi_in, double horizon_in, int nt_in, Field target);
  TimeGrid times() const { return TimeGrid(0.0, horizon, nt); }
};

/// Free flow of the adjoint datum sampled on the time grid.
Trajectory adjoint_flow(const Field& v0, const TimeGrid& times);

/// Gramian map: v0 -> -i u(0) where u solves the control system backward from
/// u(horizon) = 0 with source phi * lambda_inverse(phi * v).  The backward
/// solve is realized as the time quadrature
///     Gamma v0 = sum_m w_m U_{-t_m} [ phi lambda_inverse(phi v(t_m)) ]
/// with trapezoidal weights w_m, the exact adjoint of gramian_form; the two
/// routes to the bilinear form then agree to rounding, which the conjugate
/// gradient geometry and the duality identities rely on.
Field gamma_apply(const Field& v0, const HumProblem& problem);

/// a(v0, w0) = sum_m w_m <phi v(t_m), phi w(t_m)>_{H^{-1}}; symmetric positive
/// semidefinite, and a(v0, w0) == Re<w0, Gamma v0> to rounding.
double gramian_form(const Field& v0, const Field& w0, const HumProblem& problem);

struct CgOptions {
  double tol = 1e-8;  // relative H^1 residual
  int max_iter = 400;
};

struct CgStats {
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;
};

/// Per-iteration hook (iterate index, current solution); used by tests.
using CgMonitor = std::function<void(int, const Field&)>;

/// Solves Gamma x = rhs by conjugate gradient in the H^{-1} Riesz geometry:
/// inner products are <.,.>_{H^{-1}} and the H^1 residual rhs - Gamma x is
/// pulled back through lambda_apply before use as a direction.  Throws
/// convergence_error (reporting the smallest Ritz value seen) on stagnation.
Field gramian_cg_solve(const HumProblem& problem, const Field& rhs, const CgOptions& options,
                       CgStats* stats = nullptr, const CgMonitor& monitor = {});

/// Control frames h(t_m) = lambda_inverse(phi v(t_m)) for the adjoint flow of v0.
Trajectory synthesize_control(const Field& v0, const HumProblem& problem);

struct HumSolution {
  Field minimizer;        // adjoint datum v0
  Trajectory control;     // h(t) on the time nodes
  int cg_iterations = 0;
  double cg_residual = 0.0;
  double terminal_residual = 0.0;  // ||u(T)||_{H^{-1}} of the forward verification
};

/// Full linear HUM solve: CG for Gamma v0 = -i u0, control synthesis, and a
/// forward verification run from u0 with source phi h.
HumSolution hum_solve(const HumProblem& problem, double tol = 1e-8, int max_iter = 400);

struct ObservabilityOptions {
  std::size_t dense_threshold = 1024;  // dense eigensolve up to this many grid points
  int max_iter = 300;
  double tol = 1e-10;  // Ritz residual tolerance for the iterative path
};

struct ObservabilityResult {
  double c_obs = 0.0;
  Field worst_mode;
  int iterations = 0;
  bool dense_path = false;
};

/// Smallest eigenvalue of the Riesz-symmetrized Gramian: the largest constant
/// c with a(v0, v0) >= c ||v0||^2_{H^{-1}}, plus the minimizing datum.  Dense
/// eigendecomposition below the size threshold, Lanczos above.
ObservabilityResult observability_constant(const HumProblem& problem,
                                           const ObservabilityOptions& options = {});

/// ||w0||^2_{H^1} / int_0^T ||phi w(t)||^2_{H^1} dt for the free flow of w0.
double h1_observability_ratio(const Field& w0, const HumProblem& problem);

}  // namespace qcontrol
