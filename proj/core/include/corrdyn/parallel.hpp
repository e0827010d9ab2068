#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace corrdyn {

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [begin, end) split into contiguous chunks, one per
/// worker. Each index is processed exactly once and writes only its own
/// output slot, so the result is identical for any thread count.
inline void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  const std::size_t n = end > begin ? end - begin : 0;
  unsigned workers = resolve_thread_count(threads);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = lo + chunk < end ? lo + chunk : end;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace corrdyn
