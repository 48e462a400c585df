#pragma once

#include <array>
#include <functional>

#include "qcontrol/field.hpp"

namespace qcontrol {

/// Sobolev scale exponent for the weight (1 + |k|^2)^s.  Restricted to
/// |s| <= 4 to keep the weight within floating-point range on every grid.
struct SobolevIndex {
  double s;
  SobolevIndex(double value);  // NOLINT(google-explicit-constructor)
};

/// A Fourier symbol evaluated at a wavevector (unused axes are zero).
using SymbolFn = std::function<cplx(const std::array<double, 3>&)>;

/// Precomputed symbol values in FFT bin order; validated finite.
std::vector<cplx> symbol_table(const Grid& grid, const SymbolFn& symbol);

/// inverse-transform( table .* forward-transform(f) ).
Field apply_symbol_table(const Field& f, const std::vector<cplx>& table);

/// General Fourier multiplier; exact on band-limited fields.
Field apply_multiplier(const Field& f, const SymbolFn& symbol);

/// ( sum_k (1+|k|^2)^s |fhat(k)|^2 * (2L)^d )^{1/2}.  The s = 0 case equals
/// the physical-space Riemann-sum L^2 norm over the box.
double sobolev_norm(const Field& f, SobolevIndex s);

/// Re sum_k (1+|k|^2)^s fhat(k) conj(ghat(k)) * (2L)^d.  With s = 0 this is
/// the L^2-pivot duality pairing used throughout the control solves.
double hs_inner(const Field& f, const Field& g, SobolevIndex s);

/// Riesz maps: multiplication by (1+|k|^2)^{+1} / (1+|k|^2)^{-1}.
Field lambda_apply(const Field& f);
Field lambda_inverse(const Field& f);

/// Spectral partial derivative along an axis.
Field gradient_component(const Field& f, int axis);

/// Pointwise gradient magnitude |grad f| (real samples in a complex Field).
Field gradient_magnitude(const Field& f);

/// Riemann-sum L^2 norm computed in physical space (no transform); the
/// independent partner of sobolev_norm(f, 0) in Parseval checks.
double l2_norm_physical(const Field& f);

/// Riemann-sum L^r norm of |f| in physical space; r may be infinity.
double lr_norm_physical(const Field& f, double r);

/// Fraction of the squared mass sitting at |x_axis| > L/2 (0 for the zero field).
double coordinate_tail_fraction(const Field& f, int axis);

/// (x_j + 2it d_j) f with spectral d_j and the box coordinate x_j.  Requires
/// the tail fraction along the axis to be below `tail_tol` (the operator is
/// meaningless for fields touching the box edge); throws otherwise.
Field apply_coordinate_op(const Field& f, int axis, double t, double tail_tol = 1e-8);

/// Zero every mode with |m| > n/3 on some axis (degree-5 product guard).
Field dealias_truncate(const Field& f);

/// Largest coefficient magnitude among modes with |m| >= cutoff_mode on some axis.
double spectral_tail_max(const Field& f, int cutoff_mode);

struct SpectrumRow {
  double k_squared;
  double re;
  double im;
};
/// Rows (|k|^2, Re fhat, Im fhat) in FFT bin order for CSV emission.
std::vector<SpectrumRow> spectrum_rows(const Field& f);

}  // namespace qcontrol
