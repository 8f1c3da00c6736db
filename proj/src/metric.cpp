#include "mbx/metric.hpp"

namespace mbx {

WeightedMetric WeightedMetric::explicit_list(std::vector<Rat> w, bool tail, std::int64_t tail_base) {
  for (const auto& a : w)
    if (!a.is_positive()) throw UsageError("metric weights must be positive");
  WeightedMetric m;
  m.explicit_weights = std::move(w);
  m.has_tail = tail;
  m.power_base = tail_base;
  return m;
}

Rat WeightedMetric::weight(int level) const {
  if (level < 1) throw UsageError("level index must be >= 1");
  if (!explicit_weights.empty() && level <= static_cast<int>(explicit_weights.size()))
    return explicit_weights[level - 1];
  if (explicit_weights.empty() || has_tail) return Rat::inv_pow(power_base, level);
  throw UsageError("weight beyond bounded explicit list");
}

Rat WeightedMetric::tail(int level) const {
  // power part: sum_{j>=l} b^-j = b^-(l-1) / (b-1)
  auto power_tail = [&](int from) {
    return Rat::inv_pow(power_base, from - 1) / Rat(power_base - 1);
  };
  if (explicit_weights.empty()) return power_tail(level);
  Rat s(0);
  for (int l = std::max(level, 1); l <= static_cast<int>(explicit_weights.size()); ++l)
    s = s + explicit_weights[l - 1];
  if (has_tail) s = s + power_tail(std::max(level, static_cast<int>(explicit_weights.size()) + 1));
  return s;
}

bool WeightedMetric::separated_tail(int depth) const {
  for (int l = 1; l <= depth; ++l)
    if (!(weight(l) > tail(l + 1))) return false;
  // pure power rule beyond the checked range: b^-l > b^-l/(b-1) iff b > 2
  if (unbounded() && power_base <= 2) return false;
  return true;
}

std::optional<int> WeightedMetric::ball_depth(const Rat& r, int max_depth) const {
  if (r >= tail(1)) return 0; // whole space
  for (int n = 1; n <= max_depth; ++n)
    if (tail(n + 1) <= r) return n;
  return std::nullopt; // deeper than max_depth (radius below quantization at budget)
}

Rat distance(const LevelSpace& sp, const WeightedMetric& m, const Digits& u, const Digits& v) {
  if (u.size() != v.size())
    throw UsageError("points compared at different depths");
  sp.check_point(u);
  sp.check_point(v);
  const int L = static_cast<int>(u.size());
  if (sp.coherent) {
    // level-l components compare whole length-l prefixes, so a digit disagreement
    // at level l0 makes every level >= l0 disagree; the sum is the tail in closed form
    int first = 0;
    for (int l = 1; l <= L; ++l)
      if (u[l - 1] != v[l - 1]) { first = l; break; }
    if (first == 0) return Rat(0);
    return m.tail(first);
  }
  Rat s(0);
  for (int l = 1; l <= L; ++l)
    if (u[l - 1] != v[l - 1]) s = s + m.weight(l);
  return s;
}

Rat diameter(const LevelSpace& sp, const WeightedMetric& m, int depth) {
  if (sp.coherent) return m.tail(1);
  return m.tail(1) - m.tail(depth + 1);
}

} // namespace mbx
