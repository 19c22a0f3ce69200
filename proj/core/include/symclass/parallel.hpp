#pragma once

#include <cstddef>
#include <functional>

namespace symclass {

// Runs body(i) for i in [0, count) on a static partition of worker threads.
// Workers share nothing but the index range; callers write results into
// per-index slots so merging is deterministic. If several bodies throw, the
// exception of the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, std::size_t max_workers = 0);

std::size_t default_workers();

}  // namespace symclass
