#include "qcontrol/geometry.hpp"

#include <cmath>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

void require_fits(const Grid& grid, double outer_radius, const char* what) {
  if (outer_radius > grid.half_side()) {
    throw invalid_argument_error(std::string("geometry-overflow: ") + what +
                                 " needs |x| up to " + std::to_string(outer_radius) +
                                 " but the box half side is " +
                                 std::to_string(grid.half_side()));
  }
}

}  // namespace

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = bump(s);
  const double b = bump(1.0 - s);
  return a / (a + b);
}

CutoffPhi build_cutoff(const Grid& grid, double radius) {
  if (radius == 0.0) {
    Field ones(grid);
    for (cplx& v : ones.values()) v = 1.0;
    return CutoffPhi(0.0, std::move(ones));
  }
  if (radius < 1.0) {
    throw invalid_argument_error("cutoff radius must be 0 (degenerate) or >= 1");
  }
  require_fits(grid, radius + 4.0, "cutoff plateau");
  Field field(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    field[i] = smooth_step(grid.radius_at(i) - radius);
  }
  return CutoffPhi(radius, std::move(field));
}

CutoffPhi build_dilated_cutoff(const Grid& grid, double radius) {
  require_fits(grid, 2.0 * radius + 2.0, "dilated cutoff transition");
  Field field(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    field[i] = smooth_step(grid.radius_at(i) / 2.0 - radius);
  }
  return CutoffPhi(radius, std::move(field));
}

Field multiply(const CutoffPhi& phi, const Field& f) {
  require_same_grid(phi.field(), f, "cutoff multiply");
  Field out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= phi.sample(i);
  return out;
}

Field multiply_complement(const CutoffPhi& phi, const Field& f) {
  require_same_grid(phi.field(), f, "cutoff complement multiply");
  Field out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= 1.0 - phi.sample(i);
  return out;
}

MultiplierQ build_multiplier(const Grid& grid, double radius) {
  if (radius < 0.0) throw invalid_argument_error("multiplier radius must be nonnegative");
  require_fits(grid, radius + 4.0, "multiplier support");
  std::vector<Field> components;
  components.reserve(static_cast<std::size_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) components.emplace_back(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.radius_at(i);
    const double profile = 1.0 - smooth_step(r - (radius + 2.0));
    const auto bins = grid.unravel(i);
    for (int a = 0; a < grid.dim(); ++a) {
      components[static_cast<std::size_t>(a)][i] = grid.coordinate(bins[a]) * profile;
    }
  }
  return MultiplierQ(radius, std::move(components));
}

Field control_insert(const CutoffPhi& phi, const Field& f) {
  require_same_grid(phi.field(), f, "control_insert");
  return lambda_inverse(multiply(phi, f));
}

}  // namespace qcontrol
