#pragma once

#include <optional>

#include "mbx/cylinder.hpp"
#include "mbx/metric.hpp"

namespace mbx {

// Bi-Lipschitz partial homeomorphism between clopen sets, stored as a depth-k
// prefix rewrite table.  Rows map depth-k input prefixes bijectively to depth-k
// output prefixes; digits beyond the table depth are carried over unchanged, so
// a table is only a faithful description of a map that acts trivially past its
// depth (odometer steps, lattice translations, gluing maps).
struct PartialMap {
  int depth = 0;
  std::vector<std::pair<Digits, Digits>> rules; // sorted by input prefix
  Rat lipschitz{1};
  std::string label;

  bool empty_domain() const { return rules.empty(); }

  std::optional<Digits> apply(const Digits& p) const {
    if (static_cast<int>(p.size()) < depth)
      throw UsageError("point shallower than table depth of '" + label + "'");
    Digits key(p.begin(), p.begin() + depth);
    auto it = std::lower_bound(rules.begin(), rules.end(), key,
                               [](const auto& r, const Digits& k) { return r.first < k; });
    if (it == rules.end() || it->first != key) return std::nullopt;
    Digits out = it->second;
    out.insert(out.end(), p.begin() + depth, p.end());
    return out;
  }

  CylinderSet domain(const LevelSpace& sp) const {
    std::vector<Digits> ps;
    for (const auto& r : rules) ps.push_back(r.first);
    return canonical(sp, std::move(ps));
  }
  CylinderSet range(const LevelSpace& sp) const {
    std::vector<Digits> ps;
    for (const auto& r : rules) ps.push_back(r.second);
    return canonical(sp, std::move(ps));
  }
};

PartialMap identity_map();
PartialMap inverse(const PartialMap& f);

// deepen the table; for subshift spaces every admissible input refinement must
// produce an admissible output refinement
PartialMap refine(const LevelSpace& sp, const PartialMap& f, int depth);

// f after g, on the maximal domain; empty result is a valid (flagged) map
PartialMap compose(const LevelSpace& sp, const PartialMap& f, const PartialMap& g);

// bijection check + measured distortion at table depth against the declared constant
void validate_map(const LevelSpace& sp, const WeightedMetric& m, const PartialMap& f);

struct Pseudogroup {
  LevelSpacePtr space;
  WeightedMetric metric;
  std::vector<PartialMap> gens;
  bool group_action = false; // generators restrict globally defined homeomorphisms
  std::string name;

  int max_table_depth() const {
    int d = 0;
    for (const auto& g : gens) d = std::max(d, g.depth);
    return d;
  }
};

} // namespace mbx
