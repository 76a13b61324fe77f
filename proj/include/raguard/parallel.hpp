#pragma once

#include <cstddef>
#include <functional>

namespace raguard {

// Runs fn(0 .. n-1) on up to `jobs` worker threads. Callers must write
// results into slots keyed by index so the outcome is schedule-independent.
// The first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace raguard
