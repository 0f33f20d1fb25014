#pragma once

#include <cstddef>
#include <functional>

namespace sigma {

/// Worker count: hardware concurrency, capped by SIGMA_EIKONAL_THREADS.
unsigned worker_count();

/// Calls body(begin, end) over contiguous chunks of [0, n). Chunks are
/// disjoint; the body must only write state owned by its range.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace sigma
