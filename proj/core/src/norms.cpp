#include "qcontrol/norms.hpp"

#include <cmath>

#include "qcontrol/errors.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

double mixed_norm(const Trajectory& traj, double q, double r, bool of_gradient) {
  if (!(q >= 1.0) || !(r >= 1.0)) {
    throw invalid_argument_error("invalid-exponent: mixed norm exponents must be >= 1");
  }
  const int nt = traj.times().nt;
  const double dt = std::abs(traj.times().dt());
  std::vector<double> spatial(nt + 1);
  for (int m = 0; m <= nt; ++m) {
    const Field f = of_gradient ? gradient_magnitude(traj.frame(m)) : traj.frame(m);
    spatial[static_cast<std::size_t>(m)] = lr_norm_physical(f, r);
  }
  if (std::isinf(q)) {
    double mx = 0.0;
    for (double v : spatial) mx = std::max(mx, v);
    return mx;
  }
  double sum = 0.0;
  for (int m = 0; m <= nt; ++m) {
    const double w = (m == 0 || m == nt) ? 0.5 : 1.0;
    sum += w * std::pow(spatial[static_cast<std::size_t>(m)], q);
  }
  return std::pow(sum * dt, 1.0 / q);
}

NormBundle norm_bundle(const Trajectory& traj) {
  const double inf = std::numeric_limits<double>::infinity();
  NormBundle b;
  b.sup_l2 = mixed_norm(traj, inf, 2.0, false);
  b.sup_grad = mixed_norm(traj, inf, 2.0, true);
  b.s_norm = mixed_norm(traj, 10.0, 10.0, false);
  b.w_norm = mixed_norm(traj, 10.0 / 3.0, 10.0 / 3.0, true);
  b.z_norm = mixed_norm(traj, 10.0, 30.0 / 13.0, true);
  return b;
}

}  // namespace qcontrol
