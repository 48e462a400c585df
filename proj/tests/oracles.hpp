#pragma once

// Test-only oracles, independent of the spectral implementation paths they
// check: direct DFT summation, finite differences, closed-form solutions and
// the densely assembled Gramian.

#include <Eigen/Dense>

#include "qcontrol/hum.hpp"

namespace qcontrol::oracle {

/// O(N^2) DFT by direct summation (1/N-normalized, matching fft_forward).
std::vector<cplx> dense_dft(const Grid& grid, const std::vector<cplx>& data);

/// Periodic 4th-order central difference along an axis.
Field fd_derivative(const Field& f, int axis);

/// Closed-form free evolution of a 1-D centered Gaussian e^{-x^2/(2 sigma^2)}
/// sampled on the grid.
Field gaussian_free_solution(const Grid& grid, double sigma, double t);

/// Closed-form solution at time t for zero data and the constant-in-time
/// single-mode source a e^{ik.x} under the forced linear equation.
cplx mode_duhamel_amplitude(double k_squared, cplx amplitude, double t);

/// Gramian matrix on the plane-wave coefficient basis, column by column.
Eigen::MatrixXcd dense_gramian(const HumProblem& problem);

/// Dense solve of Gamma v0 = rhs through the assembled matrix.
Field dense_gramian_solve(const HumProblem& problem, const Field& rhs);

/// Trapezoid-in-time, Riemann-in-space evaluation of sqrt(int ||u||_L2^2 dt),
/// written directly against the samples.
double l2_spacetime_quadrature(const Trajectory& traj);

}  // namespace qcontrol::oracle
