#pragma once

#include <vector>

#include "qcontrol/field.hpp"

namespace qcontrol {

// Discrete Fourier transform pair with the coefficient normalization used by
// every norm in the library: `fft_forward` scales by 1/N so a plane wave
// e^{ik.x} carries a single unit-magnitude coefficient, and
// `fft_inverse(fft_forward(x)) == x` exactly (up to rounding).

void fft_forward_inplace(const Grid& grid, std::vector<cplx>& data);
void fft_inverse_inplace(const Grid& grid, std::vector<cplx>& data);

std::vector<cplx> fft_forward(const Grid& grid, const std::vector<cplx>& data);
std::vector<cplx> fft_inverse(const Grid& grid, const std::vector<cplx>& data);

/// Spectral coefficients of a field (forward transform, 1/N-normalized).
std::vector<cplx> spectral_coefficients(const Field& f);
/// Field with the given spectral coefficients.
Field field_from_coefficients(const Grid& grid, const std::vector<cplx>& coeffs);

}  // namespace qcontrol
