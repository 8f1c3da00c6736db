#pragma once

#include <cstdint>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "mbx/rational.hpp"

namespace mbx {

// Pair-sweep kernels.  Each kernel has a serial reference implementation and an
// OpenMP implementation; tests assert identical output and the benchmark target
// compares wall time.  The parallel variants are deterministic: per-pair results
// land in index-addressed slots, and reductions use order-independent operations
// on exact rationals.

bool kernels_parallel();
void set_kernels_parallel(bool on);
int kernel_threads();

// least-value table: out[p] = fn(p) for all pair indices p in [0, pairs)
void pair_table_serial(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                       std::vector<int>& out);
void pair_table_omp(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                    std::vector<int>& out);
void pair_table(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                std::vector<int>& out);

struct PairExtremes {
  bool any = false;
  Rat min{0}, max{0};
  std::uint64_t defined = 0;
};

// min/max of fn over pairs where it is defined
PairExtremes pair_extremes_serial(std::uint64_t pairs,
                                  const std::function<std::optional<Rat>(std::uint64_t)>& fn);
PairExtremes pair_extremes_omp(std::uint64_t pairs,
                               const std::function<std::optional<Rat>(std::uint64_t)>& fn);
PairExtremes pair_extremes(std::uint64_t pairs,
                           const std::function<std::optional<Rat>(std::uint64_t)>& fn);

// unordered pair (i<j) <-> linear index helpers
inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }
inline std::uint64_t pair_row_start(std::uint64_t i, std::uint64_t n) {
  return i * (n - 1) - i * (i - 1) / 2;
}
inline std::pair<std::uint64_t, std::uint64_t> pair_at(std::uint64_t idx, std::uint64_t n) {
  // row i holds indices [row_start(i), row_start(i+1)); invert with a sqrt seed
  double nn = static_cast<double>(n);
  double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(idx);
  std::uint64_t i = 0;
  if (disc > 0) {
    double guess = ((2 * nn - 1) - std::sqrt(disc)) / 2.0;
    i = guess <= 0 ? 0 : static_cast<std::uint64_t>(guess);
    if (i >= n - 1) i = n - 2;
  }
  while (i > 0 && pair_row_start(i, n) > idx) --i;
  while (pair_row_start(i + 1, n) <= idx) ++i;
  return {i, i + 1 + (idx - pair_row_start(i, n))};
}

} // namespace mbx
