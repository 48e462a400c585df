#include "qcontrol/propagators.hpp"

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

std::vector<cplx> free_step_table(const Grid& grid, double t) {
  std::vector<cplx> table(grid.size());
  const auto& ks = grid.wavenumbers();
  const int n = grid.n();
  const int d = grid.dim();
  std::size_t flat = 0;
  for (int i = 0; i < n; ++i) {
    const double k2a = ks[i] * ks[i];
    if (d == 1) {
      table[flat++] = std::polar(1.0, -t * k2a);
      continue;
    }
    for (int j = 0; j < n; ++j) {
      const double k2b = k2a + ks[j] * ks[j];
      if (d == 2) {
        table[flat++] = std::polar(1.0, -t * k2b);
        continue;
      }
      for (int l = 0; l < n; ++l) {
        table[flat++] = std::polar(1.0, -t * (k2b + ks[l] * ks[l]));
      }
    }
  }
  return table;
}

void spectral_step_inplace(std::vector<cplx>& coeffs, const std::vector<cplx>& table) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= table[i];
}

Trajectory reversed_conjugated(const Trajectory& traj) {
  const int nt = traj.times().nt;
  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(nt) + 1);
  for (int m = nt; m >= 0; --m) frames.push_back(conjugate(traj.frame(m)));
  return Trajectory(traj.times(), std::move(frames));
}

// Forward march of the exponential midpoint kernel in spectral space.
Trajectory linear_march(const Field& data, const Trajectory* source, const TimeGrid& times) {
  const Grid& grid = data.grid();
  const int nt = times.nt;
  const double dt = times.dt();
  const std::vector<cplx> step = free_step_table(grid, dt);
  const std::vector<cplx> half_step = free_step_table(grid, dt / 2.0);

  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(nt) + 1);
  frames.push_back(data);

  std::vector<cplx> u = spectral_coefficients(data);
  std::vector<cplx> s_next;
  std::vector<cplx> s_curr;
  if (source != nullptr) s_curr = spectral_coefficients(source->frame(0));
  const cplx minus_i(0.0, -1.0);
  for (int m = 0; m < nt; ++m) {
    spectral_step_inplace(u, step);
    if (source != nullptr) {
      s_next = spectral_coefficients(source->frame(m + 1));
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] += minus_i * dt * half_step[i] * 0.5 * (s_curr[i] + s_next[i]);
      }
      s_curr.swap(s_next);
    }
    frames.push_back(field_from_coefficients(grid, u));
  }
  return Trajectory(times, std::move(frames));
}

// Strang step with the source folded in as the same midpoint increment the
// linear kernel uses; reduces to linear_march when the phase is trivial.
Trajectory nls_march(const Field& data, const Trajectory* source, const TimeGrid& times,
                     const NlsOptions& options) {
  const Grid& grid = data.grid();
  const int nt = times.nt;
  const double dt = times.dt();
  const std::vector<cplx> step = free_step_table(grid, dt);
  const std::vector<cplx> half_step = free_step_table(grid, dt / 2.0);
  const int half_power = options.power / 2;
  if (options.power < 2 || options.power % 2 != 0) {
    throw invalid_argument_error("nonlinearity power must be a positive even integer");
  }

  // The defocusing phase is applied through its increment so only the
  // nonlinear product is dealiased; linear content passes through untouched
  // and the source-driven limit matches forced_linear_solve exactly.
  auto phase_half_step = [&](Field& u) {
    Field increment = u;
    for (cplx& v : increment.values()) {
      const double a2 = std::norm(v);
      double theta = a2;
      for (int p = 1; p < half_power; ++p) theta *= a2;
      v *= std::polar(1.0, -0.5 * dt * theta) - 1.0;
    }
    if (options.dealias) increment = dealias_truncate(increment);
    u += increment;
  };

  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(nt) + 1);
  frames.push_back(data);

  Field u = data;
  const cplx minus_i(0.0, -1.0);
  for (int m = 0; m < nt; ++m) {
    phase_half_step(u);
    std::vector<cplx> coeffs = spectral_coefficients(u);
    spectral_step_inplace(coeffs, step);
    if (source != nullptr) {
      const std::vector<cplx> s0 = spectral_coefficients(source->frame(m));
      const std::vector<cplx> s1 = spectral_coefficients(source->frame(m + 1));
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        coeffs[i] += minus_i * dt * half_step[i] * 0.5 * (s0[i] + s1[i]);
      }
    }
    u = field_from_coefficients(grid, coeffs);
    phase_half_step(u);
    if (max_abs(u) > options.blowup_threshold) {
      throw blowup_error("blowup-detected: sample magnitude exceeded " +
                         std::to_string(options.blowup_threshold) + " at t = " +
                         std::to_string(times.node(m + 1)));
    }
    frames.push_back(u);
  }
  return Trajectory(times, std::move(frames));
}

template <typename March>
Trajectory directed_solve(const Field& data, const Trajectory* source, const TimeGrid& times,
                          Direction direction, March&& march) {
  if (source != nullptr) require_aligned(*source, times, data.grid(), "directed_solve");
  if (direction == Direction::forward) {
    return march(data, source, times);
  }
  // Backward: conjugate and reverse, march forward, undo.
  const Field data_rev = conjugate(data);
  Trajectory src_rev;
  const Trajectory* src_ptr = nullptr;
  if (source != nullptr) {
    src_rev = reversed_conjugated(*source);
    src_ptr = &src_rev;
  }
  const Trajectory sol = march(data_rev, src_ptr, times);
  return reversed_conjugated(sol);
}

}  // namespace

Field free_flow(const Field& psi, double t) {
  std::vector<cplx> coeffs = spectral_coefficients(psi);
  spectral_step_inplace(coeffs, free_step_table(psi.grid(), t));
  return field_from_coefficients(psi.grid(), coeffs);
}

Trajectory free_flow_trajectory(const Field& data, const TimeGrid& times) {
  const Grid& grid = data.grid();
  const std::vector<cplx> step = free_step_table(grid, times.dt());
  std::vector<Field> frames;
  frames.reserve(static_cast<std::size_t>(times.nt) + 1);
  frames.push_back(data);
  std::vector<cplx> coeffs = spectral_coefficients(data);
  for (int m = 0; m < times.nt; ++m) {
    spectral_step_inplace(coeffs, step);
    frames.push_back(field_from_coefficients(grid, coeffs));
  }
  return Trajectory(times, std::move(frames));
}

Trajectory forced_linear_solve(const Field& data, const Trajectory* source,
                               const TimeGrid& times, Direction direction) {
  return directed_solve(data, source, times, direction,
                        [](const Field& d, const Trajectory* s, const TimeGrid& t) {
                          return linear_march(d, s, t);
                        });
}

Trajectory nls_solve(const Field& data, const Trajectory* control, const TimeGrid& times,
                     Direction direction, const NlsOptions& options) {
  return directed_solve(data, control, times, direction,
                        [&options](const Field& d, const Trajectory* s, const TimeGrid& t) {
                          return nls_march(d, s, t, options);
                        });
}

PicardResult picard_solve(const Field& u0, const Trajectory* g, const TimeGrid& times,
                          const PicardOptions& options) {
  const Grid& grid = u0.grid();
  if (g != nullptr) require_aligned(*g, times, grid, "picard_solve");
  const double h1 = sobolev_norm(u0, 1.0);
  if (h1 > options.smallness) {
    throw invalid_argument_error("picard data exceeds the smallness threshold: ||u0||_H1 = " +
                                 std::to_string(h1) + " > " + std::to_string(options.smallness));
  }
  const int nt = times.nt;
  const double dt = times.dt();
  const std::vector<cplx> step = free_step_table(grid, dt);
  const int half_power = options.power / 2;

  const Trajectory linear_part = free_flow_trajectory(u0, times);
  auto nonlinearity = [&](const Field& u) {
    Field f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double a2 = std::norm(u[i]);
      double amp = a2;
      for (int p = 1; p < half_power; ++p) amp *= a2;
      f[i] = amp * u[i];
    }
    return dealias_truncate(f);
  };

  PicardResult result;
  Trajectory current = linear_part;
  const cplx minus_i(0.0, -1.0);
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    // One application of the Duhamel map: the running integral I obeys
    // I_{m+1} = E I_m + (dt/2)(E F_m + F_{m+1}), the trapezoidal rule
    // threaded through the exact free flow.
    std::vector<Field> frames;
    frames.reserve(static_cast<std::size_t>(nt) + 1);
    frames.push_back(u0);
    std::vector<cplx> integral(grid.size(), cplx(0.0, 0.0));
    Field f_curr = nonlinearity(current.frame(0));
    if (g != nullptr) f_curr += g->frame(0);
    std::vector<cplx> f_curr_hat = spectral_coefficients(f_curr);
    for (int m = 0; m < nt; ++m) {
      Field f_next = nonlinearity(current.frame(m + 1));
      if (g != nullptr) f_next += g->frame(m + 1);
      std::vector<cplx> f_next_hat = spectral_coefficients(f_next);
      std::vector<cplx> lin_hat = spectral_coefficients(linear_part.frame(m + 1));
      for (std::size_t i = 0; i < integral.size(); ++i) {
        integral[i] = step[i] * integral[i] +
                      0.5 * dt * (step[i] * f_curr_hat[i] + f_next_hat[i]);
        lin_hat[i] += minus_i * integral[i];
      }
      frames.push_back(field_from_coefficients(grid, lin_hat));
      f_curr_hat.swap(f_next_hat);
    }
    Trajectory next(times, std::move(frames));

    std::vector<Field> diff_frames;
    diff_frames.reserve(static_cast<std::size_t>(nt) + 1);
    for (int m = 0; m <= nt; ++m) diff_frames.push_back(next.frame(m) - current.frame(m));
    const double increment = norm_bundle(Trajectory(times, std::move(diff_frames))).triple();
    if (!result.increments.empty()) {
      const double previous = result.increments.back();
      if (previous > 0.0) result.ratios.push_back(increment / previous);
    }
    result.increments.push_back(increment);
    current = std::move(next);
    result.iterations = iter;
    if (increment < options.tol) {
      result.trajectory = std::move(current);
      result.norms = norm_bundle(result.trajectory);
      return result;
    }
    if (!result.ratios.empty() && result.ratios.back() >= 1.0) {
      throw convergence_error(
          "picard no-convergence: increment ratio " + std::to_string(result.ratios.back()) +
          " >= 1; data too large for the contraction regime");
    }
  }
  throw convergence_error("picard no-convergence: max_iter = " +
                          std::to_string(options.max_iter) + " reached");
}

}  // namespace qcontrol
