#pragma once

#include <cstddef>
#include <functional>

namespace fou {

/// `requested`, or the hardware concurrency (at least 1) when it is 0.
unsigned resolve_workers(unsigned requested) noexcept;

/// Calls task(i) for every i in [0, n) on up to `workers` threads. Tasks are
/// claimed in index order from a shared counter; the first exception thrown by
/// any task is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task);

} // namespace fou
