#pragma once

#include <cstddef>
#include <functional>

namespace geomopt {

/// Worker count for data-parallel sweeps: GEOMOPT_THREADS if set to a positive
/// integer, otherwise std::thread::hardware_concurrency().
std::size_t worker_count();

/// Calls body(i) for i in [0, n) split into contiguous chunks across
/// worker_count() threads. The first exception thrown by any chunk is
/// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace geomopt
