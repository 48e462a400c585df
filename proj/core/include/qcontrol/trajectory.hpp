#pragma once

#include <vector>

#include "qcontrol/field.hpp"

namespace qcontrol {

/// Uniform time grid on [t0, t1] with nt steps (nt+1 nodes).
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int nt = 0;

  TimeGrid() = default;
  TimeGrid(double start, double end, int steps);

  double dt() const { return (t1 - t0) / nt; }
  double node(int m) const { return t0 + m * dt(); }
  double length() const { return t1 - t0; }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t0 == b.t0 && a.t1 == b.t1 && a.nt == b.nt;
  }
  friend bool operator!=(const TimeGrid& a, const TimeGrid& b) { return !(a == b); }
};

/// nt+1 Fields on a shared Grid, indexed by time node.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(TimeGrid times, std::vector<Field> frames);

  const TimeGrid& times() const { return times_; }
  int frame_count() const { return static_cast<int>(frames_.size()); }
  const Field& frame(int m) const { return frames_[static_cast<std::size_t>(m)]; }
  Field& frame(int m) { return frames_[static_cast<std::size_t>(m)]; }
  const Grid& grid() const { return frames_.front().grid(); }
  const std::vector<Field>& frames() const { return frames_; }

 private:
  TimeGrid times_;
  std::vector<Field> frames_;
};

/// Throws unless `source` shares the grid of `data` and is sampled on `times`.
void require_aligned(const Trajectory& source, const TimeGrid& times, const Grid& grid,
                     const char* where);

enum class PairKind { l2_admissible, h1_admissible };

/// Exponent pair with the (q, r) scaling relations of dimension three.
struct AdmissiblePair {
  double q = 0.0;
  double r = 0.0;
  PairKind kind = PairKind::l2_admissible;
};

/// Range and scaling identity check to 1e-12; false on violation.
bool check_admissible(double q, double r, PairKind kind);

}  // namespace qcontrol
