#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace qcontrol {

/// Periodic box [-L, L)^d sampled with n points per axis (n a power of two,
/// shared by all axes).  Point m along an axis sits at -L + m * (2L/n); the
/// wavenumber table holds k_m = pi*m/L for m in {-n/2, ..., n/2-1}, stored in
/// FFT bin order (bin j carries m = j for j < n/2 and m = j - n otherwise).
class Grid {
 public:
  Grid(int dim, int points_per_axis, double half_side);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double half_side() const { return half_side_; }
  std::size_t size() const { return size_; }
  double spacing() const { return 2.0 * half_side_ / n_; }
  double cell_measure() const { return cell_measure_; }
  double box_measure() const { return box_measure_; }

  double coordinate(int index) const { return -half_side_ + index * spacing(); }
  int signed_mode(int bin) const { return bin < n_ / 2 ? bin : bin - n_; }
  double wavenumber(int bin) const { return wavenumbers_[bin]; }
  const std::vector<double>& wavenumbers() const { return wavenumbers_; }

  /// Per-axis bins of a flat row-major index (axis 0 slowest).
  std::array<int, 3> unravel(std::size_t flat) const;
  /// |k|^2 at a flat index.
  double k_squared(std::size_t flat) const;
  /// Euclidean |x| at a flat index.
  double radius_at(std::size_t flat) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.half_side_ == b.half_side_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

 private:
  int dim_ = 0;
  int n_ = 0;
  double half_side_ = 0.0;
  std::size_t size_ = 0;
  double cell_measure_ = 0.0;
  double box_measure_ = 0.0;
  std::vector<double> wavenumbers_;
};

}  // namespace qcontrol
