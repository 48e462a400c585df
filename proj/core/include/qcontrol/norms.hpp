#pragma once

#include "qcontrol/trajectory.hpp"

namespace qcontrol {

/// Composite trapezoidal L^q-in-time norm of the spatial L^r Riemann-sum norm
/// (of u, or of |grad u| when `of_gradient`).  q or r may be infinity, taking
/// discrete maxima.
double mixed_norm(const Trajectory& traj, double q, double r, bool of_gradient);

/// The five space-time norms tracked by the contraction bookkeeping.
struct NormBundle {
  double sup_l2 = 0.0;    // sup_t ||u(t)||_{L^2}
  double sup_grad = 0.0;  // sup_t ||grad u(t)||_{L^2}
  double s_norm = 0.0;    // L^10_t L^10_x of u
  double w_norm = 0.0;    // L^{10/3}_t L^{10/3}_x of |grad u|
  double z_norm = 0.0;    // L^10_t L^{30/13}_x of |grad u|

  double triple() const { return sup_l2 + sup_grad + s_norm + w_norm + z_norm; }
};

NormBundle norm_bundle(const Trajectory& traj);

}  // namespace qcontrol
