#pragma once

#include <complex>
#include <vector>

#include "qcontrol/grid.hpp"

namespace qcontrol {

using cplx = std::complex<double>;

/// Complex scalar samples on a Grid, row-major with axis 0 slowest.
class Field {
 public:
  Field() = default;
  explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}
  Field(Grid grid, std::vector<cplx> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;
  /// Throws invalid_argument_error naming `where` when a sample is NaN/Inf.
  void require_finite(const char* where) const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx factor);
  Field& operator*=(double factor);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, cplx factor) { return a *= factor; }
  friend Field operator*(cplx factor, Field a) { return a *= factor; }
  friend Field operator*(Field a, double factor) { return a *= factor; }
  friend Field operator*(double factor, Field a) { return a *= factor; }

 private:
  Grid grid_{1, 8, 1.0};
  std::vector<cplx> values_ = std::vector<cplx>(8);
};

Field conjugate(const Field& f);
double max_abs(const Field& f);
void require_same_grid(const Field& a, const Field& b, const char* where);

}  // namespace qcontrol
