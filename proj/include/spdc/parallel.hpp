#pragma once

#include <cstddef>
#include <functional>

namespace spdc {

/// Process-wide default worker count for parallel loops (clamped to >= 1).
void set_max_threads(int n);
int max_threads();

/// Runs fn(i) for i in [0, count). Work is split into contiguous index
/// blocks, one per worker. Results must be written to disjoint,
/// index-addressed storage so the outcome is independent of the worker
/// count; reductions are done by the caller in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace spdc
