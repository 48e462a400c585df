#include "qcontrol/hum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

std::vector<double> one_plus_k2(const Grid& grid) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = 1.0 + grid.k_squared(i);
  return w;
}

std::vector<cplx> flow_step_table(const Grid& grid, double t) {
  std::vector<cplx> table(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table[i] = std::polar(1.0, -t * grid.k_squared(i));
  }
  return table;
}

double trapezoid_weight(int m, int nt, double dt) {
  return (m == 0 || m == nt) ? 0.5 * dt : dt;
}

// Spectral coefficients of phi * (field with coefficients vhat).
std::vector<cplx> observed_coefficients(const Grid& grid, const CutoffPhi& phi,
                                        const std::vector<cplx>& vhat) {
  std::vector<cplx> phys = fft_inverse(grid, vhat);
  for (std::size_t i = 0; i < phys.size(); ++i) phys[i] *= phi.sample(i);
  fft_forward_inplace(grid, phys);
  return phys;
}

}  // namespace

HumProblem::HumProblem(Grid grid_in, CutoffPhi phi_in, double horizon_in, int nt_in,
                       Field target)
    : grid(std::move(grid_in)),
      phi(std::move(phi_in)),
      horizon(horizon_in),
      nt(nt_in),
      target_initial(std::move(target)) {
  if (!(horizon > 0.0)) throw invalid_argument_error("control horizon must be positive");
  if (nt < 8) throw invalid_argument_error("control problem needs nt >= 8 time steps");
  if (phi.field().grid() != grid || target_initial.grid() != grid) {
    throw invalid_argument_error("grid-mismatch in HumProblem");
  }
  target_initial.require_finite("HumProblem target");
}

Trajectory adjoint_flow(const Field& v0, const TimeGrid& times) {
  return free_flow_trajectory(v0, times);
}

Field gamma_apply(const Field& v0, const HumProblem& problem) {
  require_same_grid(v0, problem.target_initial, "gamma_apply");
  const Grid& grid = problem.grid;
  const TimeGrid times = problem.times();
  const int nt = times.nt;
  const double dt = times.dt();
  const std::vector<double> weight = one_plus_k2(grid);
  const std::vector<cplx> back_step = flow_step_table(grid, -dt);

  // Source at a node: S = phi * lambda_inverse(phi * v), assembled in
  // coefficient space.
  auto source_coeffs = [&](const std::vector<cplx>& vhat) {
    std::vector<cplx> s = observed_coefficients(grid, problem.phi, vhat);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] /= weight[i];
    std::vector<cplx> phys = fft_inverse(grid, s);
    for (std::size_t i = 0; i < phys.size(); ++i) phys[i] *= problem.phi.sample(i);
    fft_forward_inplace(grid, phys);
    return phys;
  };

  // Descending Horner sweep: acc(m) = sum_{j >= m} w_j U_{-(t_j - t_m)} S_j.
  std::vector<cplx> vhat = spectral_coefficients(v0);
  {
    const std::vector<cplx> to_final = flow_step_table(grid, times.t1);
    for (std::size_t i = 0; i < vhat.size(); ++i) vhat[i] *= to_final[i];
  }
  std::vector<cplx> acc = source_coeffs(vhat);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= trapezoid_weight(nt, nt, dt);
  for (int m = nt - 1; m >= 0; --m) {
    const double w = trapezoid_weight(m, nt, dt);
    for (std::size_t i = 0; i < vhat.size(); ++i) vhat[i] *= back_step[i];
    const std::vector<cplx> s = source_coeffs(vhat);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = back_step[i] * acc[i] + w * s[i];
  }
  return field_from_coefficients(grid, acc);
}

double gramian_form(const Field& v0, const Field& w0, const HumProblem& problem) {
  require_same_grid(v0, w0, "gramian_form");
  require_same_grid(v0, problem.target_initial, "gramian_form");
  const Grid& grid = problem.grid;
  const TimeGrid times = problem.times();
  const std::vector<double> weight = one_plus_k2(grid);
  const std::vector<cplx> step = flow_step_table(grid, times.dt());
  const double measure = grid.box_measure();

  std::vector<cplx> vhat = spectral_coefficients(v0);
  std::vector<cplx> what = spectral_coefficients(w0);
  double sum = 0.0;
  for (int m = 0; m <= times.nt; ++m) {
    if (m > 0) {
      for (std::size_t i = 0; i < vhat.size(); ++i) {
        vhat[i] *= step[i];
        what[i] *= step[i];
      }
    }
    const std::vector<cplx> pv = observed_coefficients(grid, problem.phi, vhat);
    const std::vector<cplx> pw = observed_coefficients(grid, problem.phi, what);
    double node = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
      node += (pv[i] * std::conj(pw[i])).real() / weight[i];
    }
    sum += trapezoid_weight(m, times.nt, times.dt()) * node * measure;
  }
  return sum;
}

Field gramian_cg_solve(const HumProblem& problem, const Field& rhs, const CgOptions& options,
                       CgStats* stats, const CgMonitor& monitor) {
  require_same_grid(rhs, problem.target_initial, "gramian_cg_solve");
  const double rhs_h1 = sobolev_norm(rhs, 1.0);
  Field x(problem.grid);
  if (stats != nullptr) *stats = CgStats{};
  if (rhs_h1 == 0.0) return x;

  // CG on Lambda(Gamma .) in the <.,.>_{H^{-1}} geometry; the pulled-back
  // residual satisfies <r~, r~>_{H^{-1}} = ||rhs - Gamma x||^2_{H^1}.
  Field residual = lambda_apply(rhs);
  double rho = hs_inner(residual, residual, -1.0);
  Field direction = residual;
  std::vector<double> alphas;
  std::vector<double> betas;
  double rel = std::sqrt(rho) / rhs_h1;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const Field q = lambda_apply(gamma_apply(direction, problem));
    const double dq = hs_inner(direction, q, -1.0);
    if (!(dq > 0.0)) {
      throw convergence_error("cg-stagnation: Gramian form lost positivity (dq = " +
                              std::to_string(dq) + ")");
    }
    const double alpha = rho / dq;
    alphas.push_back(alpha);
    x += alpha * direction;
    residual -= alpha * q;
    const double rho_next = hs_inner(residual, residual, -1.0);
    rel = std::sqrt(rho_next) / rhs_h1;
    if (stats != nullptr) {
      stats->iterations = iter;
      stats->relative_residual = rel;
      stats->residual_history.push_back(rel);
    }
    if (monitor) monitor(iter, x);
    if (rel < options.tol) return x;
    const double beta = rho_next / rho;
    betas.push_back(beta);
    direction = residual + beta * direction;
    rho = rho_next;
  }

  // Stagnated: report the smallest Ritz value of the CG tridiagonal, the
  // usual conditioning witness.
  const int k = static_cast<int>(alphas.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    tri(j, j) = 1.0 / alphas[static_cast<std::size_t>(j)];
    if (j > 0) {
      tri(j, j) += betas[static_cast<std::size_t>(j - 1)] / alphas[static_cast<std::size_t>(j - 1)];
      const double off = std::sqrt(betas[static_cast<std::size_t>(j - 1)]) /
                         alphas[static_cast<std::size_t>(j - 1)];
      tri(j, j - 1) = off;
      tri(j - 1, j) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  throw convergence_error("cg-stagnation: relative residual " + std::to_string(rel) +
                          " after " + std::to_string(options.max_iter) +
                          " iterations; smallest Ritz value " +
                          std::to_string(es.eigenvalues()(0)));
}

Trajectory synthesize_control(const Field& v0, const HumProblem& problem) {
  const Trajectory v = adjoint_flow(v0, problem.times());
  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(problem.nt) + 1);
  for (int m = 0; m <= problem.nt; ++m) {
    frames.push_back(control_insert(problem.phi, v.frame(m)));
  }
  return Trajectory(problem.times(), std::move(frames));
}

HumSolution hum_solve(const HumProblem& problem, double tol, int max_iter) {
  const Field rhs = cplx(0.0, -1.0) * problem.target_initial;
  CgStats stats;
  Field v0 = gramian_cg_solve(problem, rhs, CgOptions{tol, max_iter}, &stats);
  Trajectory control = synthesize_control(v0, problem);

  std::vector<Field> source_frames;
  source_frames.reserve(static_cast<std::size_t>(problem.nt) + 1);
  for (int m = 0; m <= problem.nt; ++m) {
    source_frames.push_back(multiply(problem.phi, control.frame(m)));
  }
  const Trajectory source(problem.times(), std::move(source_frames));
  const Trajectory verified =
      forced_linear_solve(problem.target_initial, &source, problem.times(), Direction::forward);

  HumSolution solution{std::move(v0), std::move(control), stats.iterations,
                       stats.relative_residual,
                       sobolev_norm(verified.frame(problem.nt), -1.0)};
  return solution;
}

ObservabilityResult observability_constant(const HumProblem& problem,
                                           const ObservabilityOptions& options) {
  const Grid& grid = problem.grid;
  const std::size_t n = grid.size();
  const std::vector<double> weight = one_plus_k2(grid);

  if (n <= options.dense_threshold) {
    // Assemble the Gramian column by column on the plane-wave basis, then
    // symmetrize with the Riesz weights:  c_obs = lambda_min(D^{1/2} G D^{1/2}).
    Eigen::MatrixXcd gram(n, n);
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<cplx> basis(n, cplx(0.0, 0.0));
      basis[l] = 1.0;
      const Field mode = field_from_coefficients(grid, basis);
      const std::vector<cplx> col = spectral_coefficients(gamma_apply(mode, problem));
      for (std::size_t j = 0; j < n; ++j) gram(static_cast<Eigen::Index>(j),
                                               static_cast<Eigen::Index>(l)) = col[j];
    }
    Eigen::VectorXd root(n);
    for (std::size_t i = 0; i < n; ++i) root(static_cast<Eigen::Index>(i)) = std::sqrt(weight[i]);
    Eigen::MatrixXcd sym = root.asDiagonal() * gram * root.asDiagonal();
    sym = 0.5 * (sym + sym.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    const Eigen::VectorXcd y = es.eigenvectors().col(0);
    std::vector<cplx> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
      coeffs[i] = y(static_cast<Eigen::Index>(i)) * root(static_cast<Eigen::Index>(i));
    }
    Field worst = field_from_coefficients(grid, coeffs);
    const double norm = sobolev_norm(worst, -1.0);
    if (norm > 0.0) worst *= 1.0 / norm;
    return ObservabilityResult{es.eigenvalues()(0), std::move(worst), 0, true};
  }

  // Lanczos on T = Lambda Gamma in the <.,.>_{H^{-1}} geometry with full
  // reorthogonalization; converges on the Ritz residual of the smallest pair.
  auto inner = [](const Field& a, const Field& b) { return hs_inner(a, b, -1.0); };
  Field q(grid);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = cplx(1.0 + 0.25 * std::sin(17.0 * static_cast<double>(i) + 0.3),
                0.25 * std::cos(29.0 * static_cast<double>(i)));
  }
  double nq = std::sqrt(inner(q, q));
  q *= 1.0 / nq;
  std::vector<Field> basis{q};
  std::vector<double> alpha;
  std::vector<double> beta;
  double scale = 0.0;
  for (int j = 0; j < options.max_iter; ++j) {
    Field w = lambda_apply(gamma_apply(basis.back(), problem));
    const double a = inner(w, basis.back());
    alpha.push_back(a);
    scale = std::max(scale, std::abs(a));
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    for (const Field& b : basis) w -= inner(w, b) * b;
    const double nb = std::sqrt(inner(w, w));

    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i > 0) {
        tri(i, i - 1) = beta[static_cast<std::size_t>(i - 1)];
        tri(i - 1, i) = beta[static_cast<std::size_t>(i - 1)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double theta = es.eigenvalues()(0);
    const Eigen::VectorXd s = es.eigenvectors().col(0);
    const double ritz_residual = nb * std::abs(s(k - 1));
    if (ritz_residual <= options.tol * std::max(scale, 1e-300) || nb <= 1e-14 * scale) {
      Field worst(grid);
      for (int i = 0; i < k; ++i) worst += s(i) * basis[static_cast<std::size_t>(i)];
      const double norm = sobolev_norm(worst, -1.0);
      if (norm > 0.0) worst *= 1.0 / norm;
      return ObservabilityResult{theta, std::move(worst), k, false};
    }
    beta.push_back(nb);
    basis.push_back(w * (1.0 / nb));
  }
  throw convergence_error("lanczos non-convergence after " + std::to_string(options.max_iter) +
                          " iterations");
}

double h1_observability_ratio(const Field& w0, const HumProblem& problem) {
  require_same_grid(w0, problem.target_initial, "h1_observability_ratio");
  const double numerator = hs_inner(w0, w0, 1.0);
  const Grid& grid = problem.grid;
  const TimeGrid times = problem.times();
  const std::vector<double> weight = one_plus_k2(grid);
  const std::vector<cplx> step = flow_step_table(grid, times.dt());

  std::vector<cplx> what = spectral_coefficients(w0);
  double denominator = 0.0;
  for (int m = 0; m <= times.nt; ++m) {
    if (m > 0) {
      for (std::size_t i = 0; i < what.size(); ++i) what[i] *= step[i];
    }
    const std::vector<cplx> pw = observed_coefficients(grid, problem.phi, what);
    double node = 0.0;
    for (std::size_t i = 0; i < pw.size(); ++i) node += weight[i] * std::norm(pw[i]);
    denominator += trapezoid_weight(m, times.nt, times.dt()) * node * grid.box_measure();
  }
  if (!(denominator > 1e-300)) {
    throw invalid_argument_error(
        "observability-violation: observed H^1 energy vanishes (division-by-zero)");
  }
  return numerator / denominator;
}

}  // namespace qcontrol
