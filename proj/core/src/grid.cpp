#include "qcontrol/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcontrol/errors.hpp"

namespace qcontrol {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int points_per_axis, double half_side)
    : dim_(dim), n_(points_per_axis), half_side_(half_side) {
  if (dim_ < 1 || dim_ > 3) {
    throw invalid_argument_error("invalid-dimension: dim must be 1, 2 or 3, got " +
                                 std::to_string(dim_));
  }
  if (!is_power_of_two(n_) || n_ < 8) {
    throw invalid_argument_error(
        "invalid-size: points per axis must be a power of two >= 8, got " +
        std::to_string(n_));
  }
  if (!(half_side_ > 0.0) || !std::isfinite(half_side_)) {
    throw invalid_argument_error("non-positive-length: half_side must be positive");
  }
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
  cell_measure_ = std::pow(spacing(), dim_);
  box_measure_ = std::pow(2.0 * half_side_, dim_);
  wavenumbers_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    wavenumbers_[j] = std::numbers::pi * signed_mode(j) / half_side_;
  }
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
  std::array<int, 3> bins{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    bins[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return bins;
}

double Grid::k_squared(std::size_t flat) const {
  const auto bins = unravel(flat);
  double k2 = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double k = wavenumbers_[bins[a]];
    k2 += k * k;
  }
  return k2;
}

double Grid::radius_at(std::size_t flat) const {
  const auto bins = unravel(flat);
  double r2 = 0.0;
  for (int a = 0; a < dim_; ++a) {
    const double x = coordinate(bins[a]);
    r2 += x * x;
  }
  return std::sqrt(r2);
}

}  // namespace qcontrol
