#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qcontrol::detail {

// Worker cap: QCONTROL_THREADS when set, hardware concurrency otherwise.
inline int max_threads() {
  if (const char* env = std::getenv("QCONTROL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Index-parallel loop over [0, count); fn must write only to its own slot so
// results are identical for every schedule.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(max_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([count, workers, w, &fn]() {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace qcontrol::detail
