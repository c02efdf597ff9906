#pragma once

#include <cstdint>
#include <functional>

namespace alab {

// Runs fn(i) for i in [0, count) across worker threads with a static index
// partition. Callers write to disjoint slots of pre-sized buffers, so the
// result is identical for any thread count.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& fn);

// Pairwise (cascade) summation; deterministic and numerically stable.
double pairwise_sum(const double* data, std::int64_t count);

}  // namespace alab
