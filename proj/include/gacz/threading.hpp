#pragma once

#include <cstddef>
#include <functional>

namespace gacz {

// Worker count for embarrassingly parallel loops: GACZ_THREADS if set and
// positive, otherwise the hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Spreads the indices over thread_count()
// workers; falls back to a plain loop when only one worker is available.
// Exceptions from workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace gacz
