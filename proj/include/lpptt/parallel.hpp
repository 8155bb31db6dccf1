#pragma once

#include <cstdint>
#include <functional>

namespace lpptt {

/// Number of worker threads to use when a caller passes `threads <= 0`
/// (resolves to std::thread::hardware_concurrency, at least 1).
int resolve_threads(int threads);

/// Run fn(i) for i in [begin, end) on up to `threads` workers.  Work is
/// handed out in fixed-size chunks in index order, so any per-chunk
/// accumulation done by the caller is independent of the thread count.
/// With one worker this degenerates to a plain loop on the calling thread.
void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace lpptt
