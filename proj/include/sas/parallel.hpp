#pragma once

#include <cstddef>
#include <functional>

namespace sas {

// Worker count: min(hardware_concurrency, STABLE_DEBRUIJN_THREADS if set).
unsigned worker_count();

// Runs fn over contiguous index chunks [begin, end) on worker threads.
// Callers own any reduction; combine per-chunk results in index order to keep
// floating-point output independent of scheduling.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace sas
