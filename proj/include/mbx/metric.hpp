#pragma once

#include <optional>

#include "mbx/rational.hpp"
#include "mbx/space.hpp"

namespace mbx {

// Weighted level metric  d(u,v) = sum_l a_l * [u_l != v_l]  with discrete level
// metrics.  Weights are a power rule a_l = base^-l, or an explicit positive list
// optionally continued by a power tail.  For coherent points the sum over the
// (infinite) tail of disagreeing levels is evaluated in closed form.
struct WeightedMetric {
  std::int64_t power_base = 3;      // used when explicit_weights is empty, or as tail rule
  std::vector<Rat> explicit_weights; // a_1..a_m, empty = pure power rule
  bool has_tail = true;              // power tail beyond explicit weights

  static WeightedMetric power(std::int64_t base) {
    WeightedMetric m;
    m.power_base = base;
    return m;
  }
  static WeightedMetric explicit_list(std::vector<Rat> w, bool tail = false,
                                      std::int64_t tail_base = 3);

  Rat weight(int level) const;
  // sum of weights at levels >= level (exact; throws if the tail is undefined)
  Rat tail(int level) const;
  bool unbounded() const { return explicit_weights.empty() || has_tail; }

  // a_l > sum_{k>l} a_k for all l up to depth
  bool separated_tail(int depth) const;

  // smallest n >= 0 with tail(n+1) <= r; nullopt when r >= tail(1)
  std::optional<int> ball_depth(const Rat& r, int max_depth) const;
};

// distance between equal-depth digit strings of one space (the depth certifies the value)
Rat distance(const LevelSpace& sp, const WeightedMetric& m, const Digits& u, const Digits& v);

// diameter of the depth-truncated space
Rat diameter(const LevelSpace& sp, const WeightedMetric& m, int depth);

} // namespace mbx
