// Thread control and the parallel kernels used by grid-pointwise maps.
// Every kernel has a serial reference path (threads == 1) which the parallel
// path must reproduce bit-for-bit; reductions use a fixed chunk tree so the
// result does not depend on the thread count.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ccgeom {

// Global worker count. 1 = serial reference. Initialized from CCGEOM_THREADS
// if set, else 1.
int num_threads();
void set_num_threads(int n);

namespace par {

inline constexpr std::size_t kChunk = 256;

// for_each_index(n, f): f(i) for i in [0, n). Independent iterations only.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f);

// Deterministic sum of f(i) over [0, n): per-chunk partials in parallel,
// chunk partials accumulated in index order.
double map_sum(std::size_t n, const std::function<double(std::size_t)>& f);

} // namespace par
} // namespace ccgeom
