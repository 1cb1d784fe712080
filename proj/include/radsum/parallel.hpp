#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace radsum {

inline int default_thread_count() {
  if (const char* env = std::getenv("RADEMACHER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(first, last) over [0, count) in contiguous chunks across threads.
template <class Fn>
void parallel_chunks(int threads, std::size_t count, Fn fn) {
  if (threads <= 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  std::size_t nchunks = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t first = count * c / nchunks;
    std::size_t last = count * (c + 1) / nchunks;
    pool.emplace_back([=] { fn(first, last); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace radsum
