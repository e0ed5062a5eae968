#pragma once

#include <cstddef>
#include <functional>

namespace cxlab {

/// Hardware concurrency, capped by COMPLEXITY_LAB_THREADS when it holds a
/// positive integer. Always at least 1.
unsigned worker_count() noexcept;

/// Calls fn(i) for every i in [0, n) on up to `workers` threads (0 means
/// worker_count()). Indices are handed out in contiguous chunks; callers
/// write results into per-index slots so the outcome is independent of the
/// thread count. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers = 0);

} // namespace cxlab
