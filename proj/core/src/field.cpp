#include "qcontrol/field.hpp"

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"

namespace qcontrol {

Field::Field(Grid grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw invalid_argument_error("field value count " + std::to_string(values_.size()) +
                                 " does not match grid size " + std::to_string(grid_.size()));
  }
}

bool Field::all_finite() const {
  for (const cplx& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void Field::require_finite(const char* where) const {
  if (!all_finite()) {
    throw invalid_argument_error(std::string("non-finite field sample in ") + where);
  }
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "Field::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other, "Field::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(cplx factor) {
  for (cplx& v : values_) v *= factor;
  return *this;
}

Field& Field::operator*=(double factor) {
  for (cplx& v : values_) v *= factor;
  return *this;
}

Field conjugate(const Field& f) {
  Field out = f;
  for (cplx& v : out.values()) v = std::conj(v);
  return out;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (a.grid() != b.grid()) {
    throw invalid_argument_error(std::string("grid-mismatch in ") + where);
  }
}

}  // namespace qcontrol
