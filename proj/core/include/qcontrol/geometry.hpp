#pragma once

#include "qcontrol/field.hpp"

namespace qcontrol {

/// C^inf monotone transition: 0 for s <= 0, 1 for s >= 1, built from
/// f(s) = e^{-1/s} as f(s) / (f(s) + f(1-s)); smooth_step(1/2) == 1/2.
double smooth_step(double s);

/// Radial cutoff that vanishes on |x| <= R and equals 1 on |x| >= R+1.
/// radius == 0 is the degenerate full-observation override (field == 1).
class CutoffPhi {
 public:
  CutoffPhi(double radius, Field field) : radius_(radius), field_(std::move(field)) {}

  double radius() const { return radius_; }
  const Field& field() const { return field_; }
  double sample(std::size_t flat) const { return field_[flat].real(); }

 private:
  double radius_ = 0.0;
  Field field_;
};

CutoffPhi build_cutoff(const Grid& grid, double radius);

/// phi(x/2): vanishes on |x| <= 2R, equals 1 on |x| >= 2R+2.  Its complement
/// 1 - phi(x/2) windows the compactly supported low-regularity term of the
/// weak observability bound.
CutoffPhi build_dilated_cutoff(const Grid& grid, double radius);

/// Pointwise product phi * f.
Field multiply(const CutoffPhi& phi, const Field& f);

/// Pointwise product (1 - phi) * f.
Field multiply_complement(const CutoffPhi& phi, const Field& f);

/// Compactly supported vector field equal to x on |x| <= R+2 and zero on
/// |x| >= R+3.
class MultiplierQ {
 public:
  MultiplierQ(double radius, std::vector<Field> components)
      : radius_(radius), components_(std::move(components)) {}

  double radius() const { return radius_; }
  int dim() const { return static_cast<int>(components_.size()); }
  const Field& component(int axis) const { return components_[static_cast<std::size_t>(axis)]; }

 private:
  double radius_ = 0.0;
  std::vector<Field> components_;
};

MultiplierQ build_multiplier(const Grid& grid, double radius);

/// Control insertion A f = lambda_inverse(phi * f); maps H^{-1} data to the
/// H^1 control with ||A f||_{H^1} = ||phi f||_{H^{-1}} by the norm duality.
Field control_insert(const CutoffPhi& phi, const Field& f);

}  // namespace qcontrol
