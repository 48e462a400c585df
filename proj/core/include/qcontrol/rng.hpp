#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qcontrol/field.hpp"

namespace qcontrol {

/// All randomness flows from one 64-bit seed; named substreams keep sweeps
/// replayable and order-independent.  Gaussian draws use Box-Muller on the
/// engine's raw output, so sequences are stable across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  SeededRng substream(std::string_view name) const;

  double uniform();         // [0, 1)
  double normal();          // standard normal
  cplx complex_normal();    // independent N(0,1) parts

  std::uint64_t seed() const { return seed_; }

 private:
  SeededRng(std::uint64_t seed, int) : seed_(seed), engine_(seed) {}
  std::uint64_t seed_ = 0;
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Random field whose spectral coefficients at signed modes |m| <= band (per
/// axis) are drawn in a fixed mode order independent of the grid resolution,
/// so refinement sweeps act on the same continuum object.  Other modes are
/// zero.  `mean_zero` skips the constant mode.
Field random_band_limited_field(const Grid& grid, int band, SeededRng& rng,
                                bool mean_zero = false);

}  // namespace qcontrol
