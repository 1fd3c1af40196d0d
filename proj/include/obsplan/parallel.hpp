#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace obsplan {

/// Worker count from OBSPLAN_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("OBSPLAN_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(chunk, begin, end) over `count` items split into contiguous
/// chunks, one per worker. Chunk boundaries depend only on (count, workers).
inline void parallel_chunks(std::size_t count, int workers,
                            const std::function<void(int, std::size_t, std::size_t)>& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t per = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t b = std::min(count, w * per);
    const std::size_t e = std::min(count, b + per);
    pool.emplace_back([&body, w, b, e] { body(w, b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace obsplan
