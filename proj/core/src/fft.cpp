#include "qcontrol/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>

#include "qcontrol/errors.hpp"

namespace qcontrol {

namespace {

// FFTW plans are cached per (dim, n).  Plan creation is not thread-safe and is
// guarded; execution through fftw_execute_dft on caller buffers is safe for
// concurrent use.  Plans are created with FFTW_UNALIGNED so any heap buffer
// qualifies for new-array execution.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

struct PlanCache {
  std::map<std::pair<int, int>, PlanPair> plans;
  ~PlanCache() {
    for (auto& [key, pair] : plans) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
    fftw_cleanup();
  }
};

std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static PlanCache cache;
  return cache.plans;
}

PlanPair plans_for(const Grid& grid) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  const auto key = std::make_pair(grid.dim(), grid.n());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<cplx> scratch(grid.size());
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  int dims[3] = {grid.n(), grid.n(), grid.n()};
  PlanPair plans;
  plans.forward = fftw_plan_dft(grid.dim(), dims, ptr, ptr, FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.backward = fftw_plan_dft(grid.dim(), dims, ptr, ptr, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans.forward == nullptr || plans.backward == nullptr) {
    throw io_error("FFTW plan creation failed for n=" + std::to_string(grid.n()));
  }
  cache[key] = plans;
  return plans;
}

}  // namespace

void fft_forward_inplace(const Grid& grid, std::vector<cplx>& data) {
  if (data.size() != grid.size()) {
    throw invalid_argument_error("fft buffer size does not match grid");
  }
  const PlanPair plans = plans_for(grid);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans.forward, ptr, ptr);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (cplx& v : data) v *= scale;
}

void fft_inverse_inplace(const Grid& grid, std::vector<cplx>& data) {
  if (data.size() != grid.size()) {
    throw invalid_argument_error("fft buffer size does not match grid");
  }
  const PlanPair plans = plans_for(grid);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans.backward, ptr, ptr);
}

std::vector<cplx> fft_forward(const Grid& grid, const std::vector<cplx>& data) {
  std::vector<cplx> out = data;
  fft_forward_inplace(grid, out);
  return out;
}

std::vector<cplx> fft_inverse(const Grid& grid, const std::vector<cplx>& data) {
  std::vector<cplx> out = data;
  fft_inverse_inplace(grid, out);
  return out;
}

std::vector<cplx> spectral_coefficients(const Field& f) {
  return fft_forward(f.grid(), f.values());
}

Field field_from_coefficients(const Grid& grid, const std::vector<cplx>& coeffs) {
  return Field(grid, fft_inverse(grid, coeffs));
}

}  // namespace qcontrol
