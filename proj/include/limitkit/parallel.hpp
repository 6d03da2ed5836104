#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#ifdef LIMITKIT_USE_OPENMP
#include <omp.h>
#endif

namespace limitkit {

// Every data-parallel kernel has a serial reference path. Both must return
// identical results; tests run them side by side.
enum class Exec { serial, parallel };

constexpr std::size_t npos_index = std::numeric_limits<std::size_t>::max();

int max_threads();

/// Smallest i in [0, n) with pred(i), or npos_index. Deterministic under
/// either policy: the parallel path reduces with min.
template <typename Pred>
std::size_t first_index_where(std::size_t n, Pred&& pred, Exec exec) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) return i;
    return npos_index;
  }
  std::size_t best = npos_index;
#ifdef LIMITKIT_USE_OPENMP
  const auto len = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
  for (std::int64_t i = 0; i < len; ++i) {
    if (static_cast<std::size_t>(i) < best && pred(static_cast<std::size_t>(i)))
      best = static_cast<std::size_t>(i);
  }
#else
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) return i;
#endif
  return best;
}

/// out[i] = f(i) for i in [0, n).
template <typename T, typename F>
std::vector<T> map_indices(std::size_t n, F&& f, Exec exec) {
  std::vector<T> out(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
#ifdef LIMITKIT_USE_OPENMP
  const auto len = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
#endif
  return out;
}

}  // namespace limitkit
