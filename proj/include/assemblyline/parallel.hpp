#pragma once

#include <cstddef>
#include <functional>

namespace assemblyline {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 means the
// hardware concurrency). Work is handed out in index order; callers write
// results into per-index slots and reduce afterwards in index order, so the
// output does not depend on the thread count. The first exception thrown by
// a body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace assemblyline
