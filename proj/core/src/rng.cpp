#include "qcontrol/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"

namespace qcontrol {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SeededRng SeededRng::substream(std::string_view name) const {
  const std::uint64_t mixed = seed_ ^ fnv1a64(name);
  // splitmix64 finalizer decorrelates nearby seeds
  std::uint64_t z = mixed + 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return SeededRng(z, 0);
}

double SeededRng::uniform() {
  return std::ldexp(static_cast<double>(engine_() >> 11), -53);
}

double SeededRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx SeededRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Field random_band_limited_field(const Grid& grid, int band, SeededRng& rng, bool mean_zero) {
  if (band < 0 || 2 * band >= grid.n()) {
    throw invalid_argument_error("band " + std::to_string(band) +
                                 " does not fit the grid resolution " +
                                 std::to_string(grid.n()));
  }
  std::vector<cplx> coeffs(grid.size(), cplx(0.0, 0.0));
  const int n = grid.n();
  const int d = grid.dim();
  auto bin_of = [n](int mode) { return mode >= 0 ? mode : mode + n; };

  std::array<int, 3> mode{0, 0, 0};
  // Fixed lexicographic mode order over the band, independent of n.
  for (int m0 = -band; m0 <= band; ++m0) {
    mode[0] = m0;
    for (int m1 = (d > 1 ? -band : 0); m1 <= (d > 1 ? band : 0); ++m1) {
      mode[1] = m1;
      for (int m2 = (d > 2 ? -band : 0); m2 <= (d > 2 ? band : 0); ++m2) {
        mode[2] = m2;
        const cplx value = rng.complex_normal();
        if (mean_zero && m0 == 0 && m1 == 0 && m2 == 0) continue;
        std::size_t flat = static_cast<std::size_t>(bin_of(m0));
        if (d > 1) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(bin_of(m1));
        if (d > 2) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(bin_of(m2));
        coeffs[flat] = value;
      }
    }
  }
  return field_from_coefficients(grid, coeffs);
}

}  // namespace qcontrol
