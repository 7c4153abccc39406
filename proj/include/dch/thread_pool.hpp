#pragma once

#include <cstddef>
#include <functional>

namespace dch {

/// Worker count used when a caller passes 0: hardware concurrency, at least 1.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; the first exception thrown is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace dch
