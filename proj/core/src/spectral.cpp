#include "qcontrol/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"

namespace qcontrol {

namespace {

// Runs fn(flat, k) over all grid points with the wavevector assembled
// incrementally (axis 0 slowest), avoiding per-point div/mod.
template <typename Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int d = grid.dim();
  const int n = grid.n();
  const auto& ks = grid.wavenumbers();
  std::array<double, 3> k{0.0, 0.0, 0.0};
  std::size_t flat = 0;
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      k[0] = ks[i];
      fn(flat++, k);
    }
  } else if (d == 2) {
    for (int i = 0; i < n; ++i) {
      k[0] = ks[i];
      for (int j = 0; j < n; ++j) {
        k[1] = ks[j];
        fn(flat++, k);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      k[0] = ks[i];
      for (int j = 0; j < n; ++j) {
        k[1] = ks[j];
        for (int l = 0; l < n; ++l) {
          k[2] = ks[l];
          fn(flat++, k);
        }
      }
    }
  }
}

double sobolev_weight(double k2, double s) {
  return s == 0.0 ? 1.0 : std::pow(1.0 + k2, s);
}

}  // namespace

SobolevIndex::SobolevIndex(double value) : s(value) {
  if (!std::isfinite(value) || std::abs(value) > 4.0) {
    throw invalid_argument_error("Sobolev index out of range [-4, 4]: " +
                                 std::to_string(value));
  }
}

std::vector<cplx> symbol_table(const Grid& grid, const SymbolFn& symbol) {
  std::vector<cplx> table(grid.size());
  bool finite = true;
  for_each_mode(grid, [&](std::size_t flat, const std::array<double, 3>& k) {
    const cplx v = symbol(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) finite = false;
    table[flat] = v;
  });
  if (!finite) {
    throw invalid_argument_error("non-finite-symbol: multiplier symbol is NaN/Inf on the grid");
  }
  return table;
}

Field apply_symbol_table(const Field& f, const std::vector<cplx>& table) {
  std::vector<cplx> coeffs = f.values();
  fft_forward_inplace(f.grid(), coeffs);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= table[i];
  fft_inverse_inplace(f.grid(), coeffs);
  return Field(f.grid(), std::move(coeffs));
}

Field apply_multiplier(const Field& f, const SymbolFn& symbol) {
  Field out = apply_symbol_table(f, symbol_table(f.grid(), symbol));
  out.require_finite("apply_multiplier");
  return out;
}

double sobolev_norm(const Field& f, SobolevIndex s) {
  const std::vector<cplx> coeffs = spectral_coefficients(f);
  const Grid& grid = f.grid();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t flat, const std::array<double, 3>& k) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    sum += sobolev_weight(k2, s.s) * std::norm(coeffs[flat]);
  });
  return std::sqrt(sum * grid.box_measure());
}

double hs_inner(const Field& f, const Field& g, SobolevIndex s) {
  require_same_grid(f, g, "hs_inner");
  const std::vector<cplx> fc = spectral_coefficients(f);
  const std::vector<cplx> gc = spectral_coefficients(g);
  const Grid& grid = f.grid();
  double sum = 0.0;
  for_each_mode(grid, [&](std::size_t flat, const std::array<double, 3>& k) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const cplx prod = fc[flat] * std::conj(gc[flat]);
    sum += sobolev_weight(k2, s.s) * prod.real();
  });
  return sum * grid.box_measure();
}

Field lambda_apply(const Field& f) {
  std::vector<cplx> coeffs = f.values();
  const Grid& grid = f.grid();
  fft_forward_inplace(grid, coeffs);
  std::size_t i = 0;
  for_each_mode(grid, [&](std::size_t, const std::array<double, 3>& k) {
    coeffs[i++] *= 1.0 + k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  });
  fft_inverse_inplace(grid, coeffs);
  return Field(grid, std::move(coeffs));
}

Field lambda_inverse(const Field& f) {
  std::vector<cplx> coeffs = f.values();
  const Grid& grid = f.grid();
  fft_forward_inplace(grid, coeffs);
  std::size_t i = 0;
  for_each_mode(grid, [&](std::size_t, const std::array<double, 3>& k) {
    coeffs[i++] /= 1.0 + k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  });
  fft_inverse_inplace(grid, coeffs);
  return Field(grid, std::move(coeffs));
}

Field gradient_component(const Field& f, int axis) {
  const Grid& grid = f.grid();
  if (axis < 0 || axis >= grid.dim()) {
    throw invalid_argument_error("gradient axis out of range");
  }
  std::vector<cplx> coeffs = f.values();
  fft_forward_inplace(grid, coeffs);
  for_each_mode(grid, [&](std::size_t flat, const std::array<double, 3>& k) {
    coeffs[flat] *= cplx(0.0, k[axis]);
  });
  fft_inverse_inplace(grid, coeffs);
  return Field(grid, std::move(coeffs));
}

Field gradient_magnitude(const Field& f) {
  const Grid& grid = f.grid();
  std::vector<double> mag2(grid.size(), 0.0);
  for (int a = 0; a < grid.dim(); ++a) {
    const Field da = gradient_component(f, a);
    for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] += std::norm(da[i]);
  }
  Field out(grid);
  for (std::size_t i = 0; i < mag2.size(); ++i) out[i] = std::sqrt(mag2[i]);
  return out;
}

double l2_norm_physical(const Field& f) {
  double sum = 0.0;
  for (const cplx& v : f.values()) sum += std::norm(v);
  return std::sqrt(sum * f.grid().cell_measure());
}

double lr_norm_physical(const Field& f, double r) {
  if (!(r >= 1.0)) {
    throw invalid_argument_error("invalid-exponent: spatial exponent must be >= 1");
  }
  if (std::isinf(r)) return max_abs(f);
  double sum = 0.0;
  for (const cplx& v : f.values()) sum += std::pow(std::abs(v), r);
  return std::pow(sum * f.grid().cell_measure(), 1.0 / r);
}

double coordinate_tail_fraction(const Field& f, int axis) {
  const Grid& grid = f.grid();
  if (axis < 0 || axis >= grid.dim()) {
    throw invalid_argument_error("coordinate axis out of range");
  }
  const double half = grid.half_side() / 2.0;
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto bins = grid.unravel(i);
    const double w = std::norm(f[i]);
    total += w;
    if (std::abs(grid.coordinate(bins[axis])) > half) tail += w;
  }
  return total == 0.0 ? 0.0 : tail / total;
}

Field apply_coordinate_op(const Field& f, int axis, double t, double tail_tol) {
  const Grid& grid = f.grid();
  const double tail = coordinate_tail_fraction(f, axis);
  if (tail > tail_tol) {
    std::ostringstream os;
    os << "support-violation: field tail mass fraction " << tail
       << " beyond |x| > L/2 exceeds " << tail_tol;
    throw invalid_argument_error(os.str());
  }
  const Field df = gradient_component(f, axis);
  Field out(grid);
  const cplx two_it(0.0, 2.0 * t);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto bins = grid.unravel(i);
    out[i] = grid.coordinate(bins[axis]) * f[i] + two_it * df[i];
  }
  return out;
}

Field dealias_truncate(const Field& f) {
  const Grid& grid = f.grid();
  const int keep = grid.n() / 3;
  std::vector<cplx> coeffs = f.values();
  fft_forward_inplace(grid, coeffs);
  const int n = grid.n();
  const int d = grid.dim();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto bins = grid.unravel(i);
    for (int a = 0; a < d; ++a) {
      const int m = bins[a] < n / 2 ? bins[a] : bins[a] - n;
      if (std::abs(m) > keep) {
        coeffs[i] = 0.0;
        break;
      }
    }
  }
  fft_inverse_inplace(grid, coeffs);
  return Field(grid, std::move(coeffs));
}

double spectral_tail_max(const Field& f, int cutoff_mode) {
  const Grid& grid = f.grid();
  const std::vector<cplx> coeffs = spectral_coefficients(f);
  const int n = grid.n();
  double m = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto bins = grid.unravel(i);
    for (int a = 0; a < grid.dim(); ++a) {
      const int mode = bins[a] < n / 2 ? bins[a] : bins[a] - n;
      if (std::abs(mode) >= cutoff_mode) {
        m = std::max(m, std::abs(coeffs[i]));
        break;
      }
    }
  }
  return m;
}

std::vector<SpectrumRow> spectrum_rows(const Field& f) {
  const std::vector<cplx> coeffs = spectral_coefficients(f);
  std::vector<SpectrumRow> rows(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    rows[i] = {f.grid().k_squared(i), coeffs[i].real(), coeffs[i].imag()};
  }
  return rows;
}

}  // namespace qcontrol
