#pragma once

#include <optional>

#include "mbx/bigint.hpp"
#include "mbx/cylinder.hpp"
#include "mbx/metric.hpp"

namespace mbx {

// Closed ball as a cylinder set.  Coherent spaces have tail-quantized distances,
// so closed balls are depth-clamped cylinders for any positive weights; free
// product spaces need the separated-tail condition and are resolved cell by cell.
CylinderSet ball(const LevelSpace& sp, const WeightedMetric& m, const Digits& center,
                 const Rat& r, int depth);

// Box-dimension table over the scale ladder delta_n = diameter of depth-n
// cylinders.  Under the tail conditions the minimal covering count at scale
// delta_n is exactly the depth-n cell count, so the table is exact.
struct DimensionRow {
  int depth = 0;
  Rat scale;
  std::uint64_t count = 0;
};

struct DimensionReport {
  std::vector<DimensionRow> rows;
  bool slope_defined = false; // false when only a single scale is available
  bool truncated = false;     // counting hit a resource limit; table is partial
  double slope = 0;
  std::vector<double> residuals;
};

DimensionReport box_dimension_estimate(const LevelSpace& sp, const WeightedMetric& m,
                                       int depth_lo, int depth_hi);

// Refinement counting hook: number of admissible depth-`to` cells below a depth-d
// prefix.  Spaces whose counts exceed 64 bits (the subtree space) plug in here.
struct RefinementCounter {
  virtual ~RefinementCounter() = default;
  virtual BigUint count(const Digits& prefix, int to) const = 0;
  virtual std::vector<Digits> centers(int depth) const = 0; // cells at given depth
  virtual int count_depth_limit() const { return 1 << 20; }
};

struct LevelSpaceCounter final : RefinementCounter {
  const LevelSpace* sp;
  explicit LevelSpaceCounter(const LevelSpace& s) : sp(&s) {}
  BigUint count(const Digits& prefix, int to) const override {
    return BigUint(sp->refinement_count(prefix, to));
  }
  std::vector<Digits> centers(int depth) const override { return sp->cells(depth); }
  int count_depth_limit() const override {
    return sp->levels.bounded() ? sp->levels.known_depth() : (1 << 20);
  }
};

struct DoublingWitness {
  Digits center;
  int center_depth = 0;
  Rat radius;
  int halvings = 0;
  std::string needed; // decimal counts
  std::string allowed;
};

struct DoublingReport {
  bool pass = false;
  std::int64_t constant = 0;
  int max_depth = 0, max_halvings = 0;
  std::optional<DoublingWitness> witness;
};

// checks that every quantized ball B(x, r) splits into at most C^n balls of
// radius r/2^n, for all cylinder centers up to max_depth and n up to max_halvings
DoublingReport doubling_check(const RefinementCounter& rc, const WeightedMetric& m,
                              std::int64_t C, int max_depth, int max_halvings,
                              int quantize_depth_cap = 64);

} // namespace mbx
