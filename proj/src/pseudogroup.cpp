#include "mbx/pseudogroup.hpp"

#include <algorithm>
#include <map>

namespace mbx {

PartialMap identity_map() {
  PartialMap f;
  f.depth = 0;
  f.rules = {{Digits{}, Digits{}}};
  f.label = "id";
  return f;
}

PartialMap inverse(const PartialMap& f) {
  PartialMap g;
  g.depth = f.depth;
  g.lipschitz = f.lipschitz;
  g.label = f.label.empty() ? "inv" : f.label + "^-1";
  g.rules.reserve(f.rules.size());
  for (const auto& [in, out] : f.rules) g.rules.emplace_back(out, in);
  std::sort(g.rules.begin(), g.rules.end());
  return g;
}

PartialMap refine(const LevelSpace& sp, const PartialMap& f, int depth) {
  if (depth < f.depth) throw UsageError("refine target above table depth");
  if (depth == f.depth) return f;
  PartialMap g;
  g.depth = depth;
  g.lipschitz = f.lipschitz;
  g.label = f.label;
  for (const auto& [in, out] : f.rules) {
    std::vector<Digits> frontier{in};
    for (int l = f.depth; l < depth; ++l) {
      std::vector<Digits> next;
      for (const auto& q : frontier)
        for (auto e : sp.extensions(q)) {
          Digits r = q;
          r.push_back(e);
          next.push_back(std::move(r));
        }
      frontier = std::move(next);
    }
    for (const auto& q : frontier) {
      Digits img = out;
      img.insert(img.end(), q.begin() + f.depth, q.end());
      if (!sp.full_product()) {
        // suffix transport must stay admissible, else the table misrepresents the map
        bool ok = false;
        for (const auto& c : sp.admissible)
          if (is_prefix(img, c) || is_prefix(c, img)) { ok = true; break; }
        if (!ok)
          throw ConstructionError("refinement of '" + f.label + "' leaves the admissible set");
      }
      g.rules.emplace_back(q, std::move(img));
    }
  }
  std::sort(g.rules.begin(), g.rules.end());
  return g;
}

PartialMap compose(const LevelSpace& sp, const PartialMap& f, const PartialMap& g) {
  int d = std::max(f.depth, g.depth);
  PartialMap fr = refine(sp, f, d), gr = refine(sp, g, d);
  PartialMap h;
  h.depth = d;
  h.lipschitz = f.lipschitz * g.lipschitz;
  h.label = f.label + "*" + g.label;
  for (const auto& [in, mid] : gr.rules) {
    auto it = std::lower_bound(fr.rules.begin(), fr.rules.end(), mid,
                               [](const auto& r, const Digits& k) { return r.first < k; });
    if (it == fr.rules.end() || it->first != mid) continue;
    h.rules.emplace_back(in, it->second);
  }
  std::sort(h.rules.begin(), h.rules.end());
  return h;
}

void validate_map(const LevelSpace& sp, const WeightedMetric& m, const PartialMap& f) {
  std::map<Digits, int> seen_in, seen_out;
  for (const auto& [in, out] : f.rules) {
    if (static_cast<int>(in.size()) != f.depth || static_cast<int>(out.size()) != f.depth)
      throw ConstructionError("rule prefix depth mismatch in '" + f.label + "'");
    sp.check_point(in);
    sp.check_point(out);
    if (++seen_in[in] > 1) throw ConstructionError("duplicate domain prefix in '" + f.label + "'");
    if (++seen_out[out] > 1) throw ConstructionError("'" + f.label + "' is not injective on prefixes");
  }
  if (!(f.lipschitz >= Rat(1)))
    throw ConstructionError("declared Lipschitz constant below 1 in '" + f.label + "'");
  // measured distortion at table depth
  for (std::size_t i = 0; i < f.rules.size(); ++i)
    for (std::size_t j = i + 1; j < f.rules.size(); ++j) {
      Rat din = distance(sp, m, f.rules[i].first, f.rules[j].first);
      Rat dout = distance(sp, m, f.rules[i].second, f.rules[j].second);
      if (din.is_zero() || dout.is_zero())
        throw ConstructionError("distinct prefixes at distance zero in '" + f.label + "'");
      if (dout > f.lipschitz * din || din > f.lipschitz * dout)
        throw ConstructionError("measured distortion of '" + f.label +
                                "' exceeds declared constant " + f.lipschitz.str());
    }
}

} // namespace mbx
