#include "qcontrol/nonlinear_control.hpp"

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

Field quintic_term(const Field& u, int power) {
  const int half_power = power / 2;
  Field f(u.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a2 = std::norm(u[i]);
    double amp = a2;
    for (int p = 1; p < half_power; ++p) amp *= a2;
    f[i] = amp * u[i];
  }
  return dealias_truncate(f);
}

// Control-term frames phi * lambda_inverse(phi * Phi(t_m)) for the free flow
// of phi0; the h factor alone is lambda_inverse(phi * Phi).
Trajectory control_source(const Field& phi0, const HumProblem& hum) {
  const Trajectory flow = adjoint_flow(phi0, hum.times());
  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(hum.nt) + 1);
  for (int m = 0; m <= hum.nt; ++m) {
    frames.push_back(multiply(hum.phi, control_insert(hum.phi, flow.frame(m))));
  }
  return Trajectory(hum.times(), std::move(frames));
}

Trajectory quintic_source(const Trajectory& u, int power) {
  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(u.frame_count()));
  for (int m = 0; m < u.frame_count(); ++m) frames.push_back(quintic_term(u.frame(m), power));
  return Trajectory(u.times(), std::move(frames));
}

}  // namespace

NonlinearControlProblem::NonlinearControlProblem(HumProblem hum_in, double smallness,
                                                 double ball)
    : hum(std::move(hum_in)), smallness_delta(smallness), ball_radius(ball) {
  if (!(ball_radius > 0.0)) throw invalid_argument_error("ball radius must be positive");
  const double h1 = sobolev_norm(hum.target_initial, 1.0);
  if (h1 > smallness_delta) {
    throw invalid_argument_error("||u0||_{H^1} = " + std::to_string(h1) +
                                 " exceeds the smallness bound " +
                                 std::to_string(smallness_delta));
  }
}

CoupledPair solve_coupled_pair(const Field& phi0, const NonlinearControlProblem& problem) {
  require_same_grid(phi0, problem.hum.target_initial, "solve_coupled_pair");
  const double norm = sobolev_norm(phi0, -1.0);
  if (norm > problem.ball_radius * (1.0 + 1e-9)) {
    throw invalid_argument_error("||phi0||_{H^{-1}} = " + std::to_string(norm) +
                                 " outside the contraction ball of radius " +
                                 std::to_string(problem.ball_radius));
  }
  const TimeGrid times = problem.hum.times();
  const Field zero(problem.hum.grid);

  const Trajectory source = control_source(phi0, problem.hum);
  Trajectory u = nls_solve(zero, &source, times, Direction::backward, problem.nls);
  const Trajectory forcing = quintic_source(u, problem.nls.power);
  const Trajectory v = forced_linear_solve(zero, &forcing, times, Direction::backward);
  return CoupledPair{std::move(u), v.frame(0)};
}

Field fixed_point_map(const Field& phi0, const NonlinearControlProblem& problem) {
  const CoupledPair pair = solve_coupled_pair(phi0, problem);
  const Field rhs = cplx(0.0, -1.0) * (problem.hum.target_initial - pair.v0);
  CgOptions cg{problem.cg_tol_factor * problem.tol, problem.cg_max_iter};
  return gramian_cg_solve(problem.hum, rhs, cg);
}

ControlResult nonlinear_null_control(const NonlinearControlProblem& problem) {
  ControlResult result;
  Field phi0(problem.hum.grid);
  for (int k = 1; k <= problem.max_iter; ++k) {
    const Field next = fixed_point_map(phi0, problem);
    const double next_norm = sobolev_norm(next, -1.0);
    if (next_norm > problem.ball_radius) {
      throw convergence_error(
          "no-convergence: iterate " + std::to_string(k) +
          " left the contraction ball (||phi0|| = " + std::to_string(next_norm) +
          "); ||u0||_{H^1} = " +
          std::to_string(sobolev_norm(problem.hum.target_initial, 1.0)) +
          " exceeds the working smallness range (delta_sweep reports the largest "
          "amplitude that converged)");
    }
    const double increment = sobolev_norm(next - phi0, -1.0);
    if (!result.iterates.empty() && result.iterates.back() > 0.0) {
      result.contraction_factors.push_back(increment / result.iterates.back());
    }
    result.iterates.push_back(increment);
    phi0 = next;
    result.iterations = k;
    if (increment <= problem.tol * std::max(next_norm, 1e-12)) break;
    if (result.contraction_factors.size() >= 2 &&
        result.contraction_factors.back() >= 1.0 &&
        result.contraction_factors[result.contraction_factors.size() - 2] >= 1.0) {
      throw convergence_error(
          "no-convergence: contraction factors reached " +
          std::to_string(result.contraction_factors.back()) +
          "; ||u0||_{H^1} exceeds the working smallness range");
    }
    if (k == problem.max_iter) {
      throw convergence_error("no-convergence: fixed point not reached in " +
                              std::to_string(problem.max_iter) + " iterations");
    }
  }

  // Converged: rebuild the coupled pair once for the reported ratios and the
  // consistency check, then verify the synthesized control end to end.
  const CoupledPair pair = solve_coupled_pair(phi0, problem);
  const double phi_norm = sobolev_norm(phi0, -1.0);
  const double z_norm = mixed_norm(pair.u, 10.0, 30.0 / 13.0, true);
  if (phi_norm > 0.0) {
    result.claim1_ratio = sobolev_norm(pair.v0, 1.0) / std::pow(z_norm, 5.0);
    result.claim2_ratio = z_norm / phi_norm;
  }

  // Sign-convention check: the converged datum must reassemble the target as
  // u0 = v(0) + Psi(0) with Psi(0) = i Gamma phi0 (the quadrature-consistent
  // backward solve of the linear control system).
  const Field psi0 = cplx(0.0, 1.0) * gamma_apply(phi0, problem.hum);
  result.consistency_residual =
      sobolev_norm(pair.v0 + psi0 - problem.hum.target_initial, 1.0);

  const Trajectory source = control_source(phi0, problem.hum);

  result.control = synthesize_control(phi0, problem.hum);
  const Trajectory verified = nls_solve(problem.hum.target_initial, &source,
                                        problem.hum.times(), Direction::forward, problem.nls);
  result.terminal_residual = sobolev_norm(verified.frame(problem.hum.nt), 1.0);
  result.phi0 = std::move(phi0);
  return result;
}

double lipschitz_ratio(const NonlinearControlProblem& problem, const Field& a, const Field& b) {
  const double separation = sobolev_norm(a - b, -1.0);
  if (separation == 0.0) {
    throw invalid_argument_error("lipschitz probe needs distinct points");
  }
  const CoupledPair pa = solve_coupled_pair(a, problem);
  const CoupledPair pb = solve_coupled_pair(b, problem);
  // B a - B b = Gamma^{-1}( -i (J b - J a) ): one solve on the difference.
  const Field rhs = cplx(0.0, -1.0) * (pb.v0 - pa.v0);
  CgOptions cg{1e-10, problem.cg_max_iter};
  const Field diff = gramian_cg_solve(problem.hum, rhs, cg);
  return sobolev_norm(diff, -1.0) / separation;
}

DeltaSweepResult delta_sweep(const NonlinearControlProblem& problem, double initial_delta,
                             int max_doublings) {
  DeltaSweepResult sweep;
  const double base_norm = sobolev_norm(problem.hum.target_initial, 1.0);
  if (base_norm == 0.0) throw invalid_argument_error("delta sweep needs a nonzero u0 shape");
  double delta = initial_delta;
  for (int step = 0; step <= max_doublings; ++step, delta *= 2.0) {
    DeltaSweepPoint point;
    point.u0_h1_norm = delta;
    try {
      HumProblem hum(problem.hum.grid, problem.hum.phi, problem.hum.horizon, problem.hum.nt,
                     (delta / base_norm) * problem.hum.target_initial);
      NonlinearControlProblem scaled(std::move(hum), std::max(problem.smallness_delta, delta),
                                     problem.ball_radius);
      scaled.tol = problem.tol;
      scaled.max_iter = problem.max_iter;
      scaled.cg_tol_factor = problem.cg_tol_factor;
      scaled.cg_max_iter = problem.cg_max_iter;
      scaled.nls = problem.nls;
      const ControlResult r = nonlinear_null_control(scaled);
      point.converged = true;
      point.terminal_residual = r.terminal_residual;
      for (double f : r.contraction_factors) {
        point.max_contraction_factor = std::max(point.max_contraction_factor, f);
      }
      sweep.largest_working_delta = delta;
    } catch (const convergence_error&) {
      point.converged = false;
    } catch (const blowup_error&) {
      point.converged = false;
    }
    sweep.points.push_back(point);
    if (!point.converged) break;
  }
  return sweep;
}

}  // namespace qcontrol
