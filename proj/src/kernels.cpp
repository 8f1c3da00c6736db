#include "mbx/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbx {

namespace {
std::atomic<bool> g_parallel{true};
}

bool kernels_parallel() { return g_parallel.load(); }
void set_kernels_parallel(bool on) { g_parallel.store(on); }

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void pair_table_serial(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                       std::vector<int>& out) {
  out.assign(pairs, 0);
  for (std::uint64_t p = 0; p < pairs; ++p) out[p] = fn(p);
}

void pair_table_omp(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                    std::vector<int>& out) {
  out.assign(pairs, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(pairs); ++p)
    out[static_cast<std::uint64_t>(p)] = fn(static_cast<std::uint64_t>(p));
#else
  for (std::uint64_t p = 0; p < pairs; ++p) out[p] = fn(p);
#endif
}

void pair_table(std::uint64_t pairs, const std::function<int(std::uint64_t)>& fn,
                std::vector<int>& out) {
  if (kernels_parallel())
    pair_table_omp(pairs, fn, out);
  else
    pair_table_serial(pairs, fn, out);
}

PairExtremes pair_extremes_serial(std::uint64_t pairs,
                                  const std::function<std::optional<Rat>(std::uint64_t)>& fn) {
  PairExtremes r;
  for (std::uint64_t p = 0; p < pairs; ++p) {
    auto v = fn(p);
    if (!v) continue;
    if (!r.any) {
      r.any = true;
      r.min = r.max = *v;
    } else {
      if (*v < r.min) r.min = *v;
      if (*v > r.max) r.max = *v;
    }
    ++r.defined;
  }
  return r;
}

PairExtremes pair_extremes_omp(std::uint64_t pairs,
                               const std::function<std::optional<Rat>(std::uint64_t)>& fn) {
#ifdef _OPENMP
  PairExtremes total;
#pragma omp parallel
  {
    PairExtremes local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(pairs); ++p) {
      auto v = fn(static_cast<std::uint64_t>(p));
      if (!v) continue;
      if (!local.any) {
        local.any = true;
        local.min = local.max = *v;
      } else {
        if (*v < local.min) local.min = *v;
        if (*v > local.max) local.max = *v;
      }
      ++local.defined;
    }
#pragma omp critical
    {
      if (local.any) {
        if (!total.any) {
          total = local;
        } else {
          if (local.min < total.min) total.min = local.min;
          if (local.max > total.max) total.max = local.max;
          total.defined += local.defined;
        }
      }
    }
  }
  return total;
#else
  return pair_extremes_serial(pairs, fn);
#endif
}

PairExtremes pair_extremes(std::uint64_t pairs,
                           const std::function<std::optional<Rat>(std::uint64_t)>& fn) {
  return kernels_parallel() ? pair_extremes_omp(pairs, fn) : pair_extremes_serial(pairs, fn);
}

} // namespace mbx
