#pragma once

#include <stdexcept>
#include <string>

namespace qcontrol {

// Error taxonomy mirrors the CLI exit-code table:
//   invalid_argument_error, invalid_config_error -> 2
//   convergence_error                            -> 3
//   blowup_error                                 -> 4
//   io_error                                     -> 5

// Violated operation precondition (grid mismatch, bad exponent, geometry
// overflow, support violation, ...).
struct invalid_argument_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
struct invalid_config_error : invalid_argument_error {
  using invalid_argument_error::invalid_argument_error;
};

// An iterative solver failed to reach its tolerance (CG stagnation, Picard
// non-contraction, fixed-point divergence, Lanczos non-convergence).
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A field sample left the trusted amplitude range during a nonlinear solve.
struct blowup_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcontrol
