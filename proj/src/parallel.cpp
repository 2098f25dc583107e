#include "ccgeom/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccgeom {

namespace {

int initial_threads() {
  if (const char* env = std::getenv("CCGEOM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::atomic<int> g_threads{initial_threads()};

} // namespace

int num_threads() { return g_threads.load(std::memory_order_relaxed); }

void set_num_threads(int n) { g_threads.store(n < 1 ? 1 : n, std::memory_order_relaxed); }

namespace par {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int nt = num_threads();
  if (nt <= 1 || n < 2 * kChunk) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
  for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

double map_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
  if (n == 0) return 0.0;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  for_each_index(nchunks, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[c] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

} // namespace par
} // namespace ccgeom
