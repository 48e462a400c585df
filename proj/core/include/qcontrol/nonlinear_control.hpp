#pragma once

#include "qcontrol/hum.hpp"

namespace qcontrol {

/// Fixed-point problem for the quintic control extension.  Carries the linear
/// problem (grid, cutoff, horizon, target u0) plus the contraction controls.
struct NonlinearControlProblem {
  HumProblem hum;
  double smallness_delta = 0.05;  // admissible ||u0||_{H^1}
  double ball_radius = 0.5;       // iterate ball in H^{-1}
  double tol = 1e-6;              // fixed-point increment tolerance (relative)
  int max_iter = 40;
  double cg_tol_factor = 0.1;     // inner CG tolerance = cg_tol_factor * tol
  int cg_max_iter = 400;
  NlsOptions nls;

  NonlinearControlProblem(HumProblem hum_in, double smallness, double ball);
};

struct CoupledPair {
  Trajectory u;  // backward solution of the controlled quintic system
  Field v0;      // datum of the backward linear system forced by |u|^4 u
};

/// Solves the coupled backward pair driven by the free flow of `phi0`:
/// the quintic system with control source phi * lambda_inverse(phi * Phi(t))
/// from u(T) = 0, then the linear system forced by |u|^4 u from v(T) = 0.
/// Returns u and v(0) (the quintically small correction datum).
CoupledPair solve_coupled_pair(const Field& phi0, const NonlinearControlProblem& problem);

/// One fixed-point step: resolves the Gramian equation so that the linear
/// part accounts for u0 minus the current quintic correction,
///   next = Gamma^{-1}( -i (u0 - v(0)) ).
/// At the fixed point the coupled solution satisfies u(0) = u0.
Field fixed_point_map(const Field& phi0, const NonlinearControlProblem& problem);

struct ControlResult {
  Field phi0;          // converged H^{-1} datum
  Trajectory control;  // h(t) = lambda_inverse(phi Phi(t)) on the nodes
  std::vector<double> iterates;             // H^{-1} increments
  std::vector<double> contraction_factors;  // successive increment ratios
  double terminal_residual = 0.0;           // ||u(T)||_{H^1} of the verified forward solve
  double claim1_ratio = 0.0;  // ||v(0)||_{H^1} / ||grad u||^5_{L^10 L^{30/13}}
  double claim2_ratio = 0.0;  // ||grad u||_{L^10 L^{30/13}} / ||phi0||_{H^{-1}}
  double consistency_residual = 0.0;  // ||v(0) + Psi(0) - u0||_{H^1} at convergence
  int iterations = 0;
};

/// Iterates the fixed-point map from phi0 = 0, synthesizes the control from
/// the converged datum and verifies it with a forward quintic solve.  Throws
/// convergence_error when the iteration stops contracting or leaves the ball,
/// blowup_error when a solve exceeds the amplitude guard.
ControlResult nonlinear_null_control(const NonlinearControlProblem& problem);

/// Measured Lipschitz ratio ||B a - B b||_{H^{-1}} / ||a - b||_{H^{-1}},
/// computed through one Gramian solve on the difference so the shared u0 part
/// cancels exactly.
double lipschitz_ratio(const NonlinearControlProblem& problem, const Field& a, const Field& b);

struct DeltaSweepPoint {
  double u0_h1_norm = 0.0;
  bool converged = false;
  double max_contraction_factor = 0.0;
  double terminal_residual = 0.0;
};

struct DeltaSweepResult {
  std::vector<DeltaSweepPoint> points;
  double largest_working_delta = 0.0;
};

/// Doubles ||u0||_{H^1} from `initial_delta` until the fixed point fails,
/// recording the largest amplitude that still converges.
DeltaSweepResult delta_sweep(const NonlinearControlProblem& problem, double initial_delta,
                             int max_doublings);

}  // namespace qcontrol
