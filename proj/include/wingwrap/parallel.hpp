#pragma once

#include <functional>

namespace wingwrap {

/// Worker count for trial fan-out: WINGWRAP_THREADS when set (clamped to
/// [1, 256]), else the hardware concurrency, at least 1.
int worker_count();

/// Runs fn(0..n-1), fanning out across worker_count() threads when n > 1.
/// Indices are claimed dynamically; callers must make fn(i) independent of
/// execution order (write results into slot i). The first exception thrown
/// by any worker is rethrown after all workers finish.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace wingwrap
