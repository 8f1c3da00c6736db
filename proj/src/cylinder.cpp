#include "mbx/cylinder.hpp"

#include <algorithm>
#include <map>

namespace mbx {

CylinderSet canonical(const LevelSpace& sp, std::vector<Digits> prefixes) {
  std::sort(prefixes.begin(), prefixes.end());
  prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
  // drop prefixes covered by a shorter one (sorted order puts covers first)
  std::vector<Digits> anti;
  for (auto& p : prefixes) {
    if (!anti.empty() && is_prefix(anti.back(), p)) continue;
    anti.push_back(std::move(p));
  }
  // merge full sibling families bottom-up until stable
  bool merged = true;
  while (merged) {
    merged = false;
    std::map<Digits, std::vector<std::uint32_t>> by_parent;
    for (const auto& p : anti) {
      if (p.empty()) continue;
      Digits parent(p.begin(), p.end() - 1);
      by_parent[parent].push_back(p.back());
    }
    for (auto& [parent, kids] : by_parent) {
      std::vector<std::uint32_t> all = sp.extensions(parent);
      if (kids.size() != all.size() || all.empty()) continue;
      std::sort(kids.begin(), kids.end());
      if (kids != all) continue;
      std::vector<Digits> next;
      next.reserve(anti.size());
      for (auto& p : anti) {
        if (p.size() == parent.size() + 1 && is_prefix(parent, p)) continue;
        next.push_back(std::move(p));
      }
      next.push_back(parent);
      std::sort(next.begin(), next.end());
      anti = std::move(next);
      merged = true;
      break;
    }
  }
  return CylinderSet{std::move(anti)};
}

static std::vector<Digits> expand_to(const LevelSpace& sp, const CylinderSet& a, int depth,
                                     std::uint64_t budget) {
  std::vector<Digits> out;
  for (const auto& p : a.prefixes) {
    if (static_cast<int>(p.size()) > depth)
      throw UsageError("cylinder deeper than expansion depth");
    std::vector<Digits> frontier{p};
    for (int l = static_cast<int>(p.size()); l < depth; ++l) {
      std::vector<Digits> next;
      for (const auto& q : frontier)
        for (auto e : sp.extensions(q)) {
          Digits r = q;
          r.push_back(e);
          next.push_back(std::move(r));
        }
      frontier = std::move(next);
      if (frontier.size() + out.size() > budget)
        throw ResourceLimit("cylinder expansion exceeds budget");
    }
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CylinderSet cyl_union(const LevelSpace& sp, const CylinderSet& a, const CylinderSet& b) {
  std::vector<Digits> all = a.prefixes;
  all.insert(all.end(), b.prefixes.begin(), b.prefixes.end());
  return canonical(sp, std::move(all));
}

CylinderSet cyl_intersect(const LevelSpace& sp, const CylinderSet& a, const CylinderSet& b) {
  std::vector<Digits> out;
  for (const auto& p : a.prefixes)
    for (const auto& q : b.prefixes) {
      if (is_prefix(p, q)) out.push_back(q);
      else if (is_prefix(q, p)) out.push_back(p);
    }
  return canonical(sp, std::move(out));
}

CylinderSet cyl_complement(const LevelSpace& sp, const CylinderSet& a) {
  if (a.is_empty()) return CylinderSet::whole();
  int d = a.max_depth();
  std::vector<Digits> cells = expand_to(sp, CylinderSet::whole(), d, 1u << 22);
  std::vector<Digits> inside = expand_to(sp, a, d, 1u << 22);
  std::vector<Digits> out;
  std::set_difference(cells.begin(), cells.end(), inside.begin(), inside.end(),
                      std::back_inserter(out));
  return canonical(sp, std::move(out));
}

std::vector<Digits> cyl_cells(const LevelSpace& sp, const CylinderSet& a, int depth,
                              std::uint64_t budget) {
  return expand_to(sp, a, depth, budget);
}

std::uint64_t cyl_cell_count(const LevelSpace& sp, const CylinderSet& a, int depth) {
  std::uint64_t n = 0;
  for (const auto& p : a.prefixes) {
    std::uint64_t r = sp.refinement_count(p, depth);
    if (n > UINT64_MAX - r) throw ResourceLimit("cell count overflow");
    n += r;
  }
  return n;
}

} // namespace mbx
