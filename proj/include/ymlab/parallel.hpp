#ifndef YMLAB_PARALLEL_HPP
#define YMLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace ymlab {

// Worker count: YMLAB_THREADS if set (>= 1), otherwise hardware concurrency.
int worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the worker count; bodies must write disjoint outputs.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Pairwise summation in index order (deterministic, O(eps log n) error).
double pairwise_sum(std::span<const double> values);

}  // namespace ymlab

#endif
