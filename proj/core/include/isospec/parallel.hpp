#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace isospec {

// Number of workers: min(hardware_concurrency, ISOSPEC_THREADS), at least 1.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across
// worker_count() threads. fn must only touch data indexed by its own i;
// combined with per-index RNG streams this keeps results schedule-independent.
// Exceptions from workers are captured and the first one is rethrown.
void parallel_for(int n, const std::function<void(int)>& fn);

// Pairwise (cascade) summation: the result depends only on the order of the
// input vector, not on how work was distributed, and the rounding error grows
// like O(log n) instead of O(n).
double pairwise_sum(const std::vector<double>& v);

} // namespace isospec
