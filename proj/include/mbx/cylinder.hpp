#pragma once

#include "mbx/space.hpp"

namespace mbx {

// Clopen subset as a canonical antichain of cylinder prefixes: sorted, no prefix
// contains another, and sibling families exhausting a level are merged into the
// parent.  Canonical form is unique, so equality is vector equality.
struct CylinderSet {
  std::vector<Digits> prefixes;

  static CylinderSet none() { return {}; }
  static CylinderSet whole() { return CylinderSet{{Digits{}}}; }

  bool is_empty() const { return prefixes.empty(); }
  bool is_whole() const { return prefixes.size() == 1 && prefixes[0].empty(); }

  bool contains_prefix(const Digits& d) const {
    for (const auto& p : prefixes)
      if (is_prefix(p, d)) return true;
    return false;
  }

  int max_depth() const {
    std::size_t m = 0;
    for (const auto& p : prefixes) m = std::max(m, p.size());
    return static_cast<int>(m);
  }

  friend bool operator==(const CylinderSet& a, const CylinderSet& b) {
    return a.prefixes == b.prefixes;
  }
};

CylinderSet canonical(const LevelSpace& sp, std::vector<Digits> prefixes);
CylinderSet cyl_union(const LevelSpace& sp, const CylinderSet& a, const CylinderSet& b);
CylinderSet cyl_intersect(const LevelSpace& sp, const CylinderSet& a, const CylinderSet& b);
CylinderSet cyl_complement(const LevelSpace& sp, const CylinderSet& a);

// depth-d cells inside the set (d >= max_depth of the set)
std::vector<Digits> cyl_cells(const LevelSpace& sp, const CylinderSet& a, int depth,
                              std::uint64_t budget = 1u << 22);
std::uint64_t cyl_cell_count(const LevelSpace& sp, const CylinderSet& a, int depth);

} // namespace mbx
