#include "mbx/odometer.hpp"

namespace mbx {

std::uint64_t mixed_radix_value(const std::vector<std::uint32_t>& degrees, const Digits& d) {
  std::uint64_t v = 0, place = 1;
  for (std::size_t l = 0; l < d.size(); ++l) {
    v += place * d[l];
    place *= degrees[l];
  }
  return v;
}

Digits mixed_radix_digits(const std::vector<std::uint32_t>& degrees, std::uint64_t value,
                          int depth) {
  Digits d(depth);
  for (int l = 0; l < depth; ++l) {
    d[l] = static_cast<std::uint32_t>(value % degrees[l]);
    value /= degrees[l];
  }
  return d;
}

Pseudogroup odometer_system(const std::vector<std::uint32_t>& degrees, int depth,
                            const std::vector<std::uint32_t>& offsets, WeightedMetric metric) {
  if (depth < 1) throw UsageError("depth must be >= 1");
  if (static_cast<int>(degrees.size()) < depth) throw UsageError("degree sequence too short");
  for (auto m : degrees)
    if (m < 2) throw UsageError("covering degrees must be >= 2");
  std::vector<std::uint32_t> sizes(degrees.begin(), degrees.begin() + depth);
  std::uint64_t M = 1;
  for (auto s : sizes) M *= s;

  Pseudogroup g;
  // the space is the depth-k truncation, so the cyclic table (wrap row included)
  // is the exact quotient action
  g.space = make_product_space(sizes, true);
  g.metric = std::move(metric);
  g.group_action = true;
  g.name = "odometer";
  for (auto o : offsets) {
    if (o == 0 || o >= M)
      throw UsageError("offset must be in [1, cell count) at this depth");
    PartialMap f;
    f.depth = depth;
    f.lipschitz = Rat(1);
    f.label = "+" + std::to_string(o);
    for (std::uint64_t x = 0; x < M; ++x)
      f.rules.emplace_back(mixed_radix_digits(sizes, x, depth),
                           mixed_radix_digits(sizes, (x + o) % M, depth));
    std::sort(f.rules.begin(), f.rules.end());
    g.gens.push_back(std::move(f));
  }
  return g;
}

} // namespace mbx
