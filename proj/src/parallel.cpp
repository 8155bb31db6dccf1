#include "lpptt/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace lpptt {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  const std::int64_t count = end - begin;
  if (count <= 0) return;
  const int workers = std::min<std::int64_t>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  // Chunked self-scheduling: the chunk size depends only on the range, so
  // the partition (and thus any per-chunk float accumulation order chosen
  // by the caller) does not change with the worker count.
  const std::int64_t chunk = std::max<std::int64_t>(1, count / (8 * workers));
  std::atomic<std::int64_t> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::int64_t lo = next.fetch_add(chunk);
        if (lo >= end) return;
        const std::int64_t hi = std::min(end, lo + chunk);
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lpptt
