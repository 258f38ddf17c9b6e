#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tenspec {

/// Worker count: TENSOR_SPECTRA_THREADS if set (min 1), else hardware threads.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("TENSOR_SPECTRA_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/*
 * Run fn(i) for i in [0, n) on up to thread_budget() threads. Each index
 * writes only its own state inside fn, so results are identical to the
 * sequential order; callers do any reduction afterwards, sequentially.
 */
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = thread_budget();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace tenspec
