#pragma once

#include <cstddef>
#include <functional>

namespace mhdlab {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled by exactly one call; callers write results by index, so the output
/// does not depend on scheduling. The first exception thrown by a body is
/// rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Worker count used when a caller passes threads <= 0.
int default_threads();

}  // namespace mhdlab
