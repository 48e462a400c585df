#include "qcontrol/trajectory.hpp"

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"

namespace qcontrol {

TimeGrid::TimeGrid(double start, double end, int steps) : t0(start), t1(end), nt(steps) {
  if (nt < 1) throw invalid_argument_error("time grid needs at least one step");
  if (!(t1 != t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw invalid_argument_error("time grid endpoints must be finite and distinct");
  }
}

Trajectory::Trajectory(TimeGrid times, std::vector<Field> frames)
    : times_(times), frames_(std::move(frames)) {
  if (frames_.size() != static_cast<std::size_t>(times_.nt) + 1) {
    throw invalid_argument_error("misaligned-trajectory: expected " +
                                 std::to_string(times_.nt + 1) + " frames, got " +
                                 std::to_string(frames_.size()));
  }
  for (const Field& f : frames_) {
    if (f.grid() != frames_.front().grid()) {
      throw invalid_argument_error("misaligned-trajectory: frames on different grids");
    }
  }
}

void require_aligned(const Trajectory& source, const TimeGrid& times, const Grid& grid,
                     const char* where) {
  if (source.times() != times || source.grid() != grid) {
    throw invalid_argument_error(std::string("misaligned-trajectory in ") + where);
  }
}

bool check_admissible(double q, double r, PairKind kind) {
  constexpr double tol = 1e-12;
  if (!(q >= 1.0) || !(r >= 1.0)) return false;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  if (kind == PairKind::l2_admissible) {
    if (!(r >= 2.0 && r <= 6.0)) return false;
    return std::abs(2.0 * inv_q + 3.0 * inv_r - 1.5) <= tol;
  }
  if (std::isinf(r)) return std::abs(2.0 * inv_q - 0.5) <= tol;
  if (!(r >= 6.0)) return false;
  return std::abs(2.0 * inv_q + 3.0 * inv_r - 0.5) <= tol;
}

}  // namespace qcontrol
