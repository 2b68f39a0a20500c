#pragma once

#include <cstddef>
#include <functional>

namespace helmbie {

/// Worker count: HELMBIE_THREADS if set and positive, else the hardware count.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous blocks, one block per worker.
/// Each index is processed by exactly one thread, so per-index results do not
/// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace helmbie
