#pragma once

#include <cstddef>
#include <functional>

namespace wg {

/// Worker cap: WGTRANSPORT_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous blocks, one per worker.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace wg
