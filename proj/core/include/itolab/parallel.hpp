#pragma once

#include <cstddef>
#include <functional>

namespace itolab {

/// Worker count: ITOLAB_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. Each
/// index is visited exactly once; callers write results into slot i, which
/// keeps output independent of scheduling. The first exception thrown by any
/// body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace itolab
