#pragma once

#include <cstddef>
#include <functional>

namespace bblab {

/// Worker count: hardware concurrency, capped by the BBLAB_THREADS environment
/// variable when it holds a positive integer.
std::size_t thread_count();

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// body(begin, end, worker) on each. Runs inline when one worker suffices.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                  std::size_t max_workers = 0);

}  // namespace bblab
