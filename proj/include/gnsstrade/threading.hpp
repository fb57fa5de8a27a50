#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gnsstrade {

// Deterministic parallel map over [0, n): the work function writes only to
// its own index, so results are independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned n_threads, Fn&& fn) {
  if (n == 0) return;
  unsigned hw = std::max(1u, n_threads);
  if (hw == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + hw - 1) / hw;
  for (unsigned t = 0; t < hw; ++t) {
    std::size_t lo = static_cast<std::size_t>(t) * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Pairwise (cascade) summation: deterministic and well-conditioned.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace gnsstrade
