// Compares the serial reference kernels against the OpenMP kernels on a mid-size
// pair sweep: the separation table and the audit extremes for an odometer system.

#include <chrono>
#include <cstdio>

#include "mbx/engine.hpp"
#include "mbx/kernels.hpp"
#include "mbx/odometer.hpp"

using namespace mbx;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
  const int depth = 10;
  auto sys = make_table_system(odometer_system(std::vector<std::uint32_t>(depth, 2), depth));
  const std::uint64_t n = sys->cell_count(depth);
  std::vector<Digits> reps;
  for (std::uint64_t c = 0; c < n; ++c) reps.push_back(sys->representative(c, depth));
  const std::uint64_t pairs = pair_count(n);
  const Rat eps(1, 18);

  auto sep_fn = [&](std::uint64_t idx) {
    auto [i, j] = pair_at(idx, n);
    auto r = separation_word(*sys, reps[i], reps[j], eps, 2);
    return r ? r->first : -1;
  };
  auto ratio_fn = [&](std::uint64_t idx) -> std::optional<Rat> {
    auto [i, j] = pair_at(idx, n);
    return sys->dist(reps[i], reps[j]);
  };

  std::printf("pair sweep over %llu cells (%llu pairs), %d thread(s)\n",
              static_cast<unsigned long long>(n), static_cast<unsigned long long>(pairs),
              kernel_threads());

  std::vector<int> t_serial, t_omp;
  auto t0 = Clock::now();
  pair_table_serial(pairs, sep_fn, t_serial);
  double ser_ms = ms_since(t0);
  t0 = Clock::now();
  pair_table_omp(pairs, sep_fn, t_omp);
  double omp_ms = ms_since(t0);
  bool same = t_serial == t_omp;
  std::printf("separation table: serial %8.1f ms | omp %8.1f ms | speedup %.2fx | %s\n", ser_ms,
              omp_ms, ser_ms / omp_ms, same ? "identical" : "MISMATCH");

  t0 = Clock::now();
  PairExtremes a = pair_extremes_serial(pairs, ratio_fn);
  double ser2 = ms_since(t0);
  t0 = Clock::now();
  PairExtremes b = pair_extremes_omp(pairs, ratio_fn);
  double omp2 = ms_since(t0);
  bool same2 = a.any == b.any && a.min == b.min && a.max == b.max && a.defined == b.defined;
  std::printf("distance extremes: serial %8.1f ms | omp %8.1f ms | speedup %.2fx | %s\n", ser2,
              omp2, ser2 / omp2, same2 ? "identical" : "MISMATCH");
  return same && same2 ? 0 : 1;
}
