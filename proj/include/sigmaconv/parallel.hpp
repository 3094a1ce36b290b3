#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sigmaconv {

// Worker count: RC_THREADS env var caps it, hardware concurrency otherwise.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RC_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), hw * 4);
  }
  return hw;
}

// Partition [begin, end) into contiguous chunks, one per worker. The body
// receives (chunk_begin, chunk_end); results must be written to disjoint
// per-index slots so the merge is deterministic by construction.
inline void parallel_ranges(std::size_t begin, std::size_t end,
                            const std::function<void(std::size_t, std::size_t)>& body,
                            std::size_t min_split = 1024) {
  std::size_t total = end > begin ? end - begin : 0;
  unsigned workers = worker_count();
  if (total == 0) return;
  if (workers <= 1 || total < min_split) {
    body(begin, end);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = begin + w * chunk;
    std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace sigmaconv
