#include "mbx/space.hpp"

#include <algorithm>
#include <set>

namespace mbx {

std::uint64_t LevelSpace::cell_count(int depth) const {
  if (depth < 0) throw UsageError("negative depth");
  if (depth == 0) return 1;
  if (!full_product()) {
    if (depth > admissible_depth)
      throw UsageError("depth beyond tabulated admissible cells");
    if (depth == admissible_depth) return admissible.size();
    std::uint64_t count = 0;
    const Digits* last = nullptr;
    for (const auto& c : admissible) {
      if (last && std::equal(c.begin(), c.begin() + depth, last->begin())) continue;
      ++count;
      last = &c;
    }
    return count;
  }
  std::uint64_t n = 1;
  for (int l = 1; l <= depth; ++l) {
    std::uint64_t s = levels.size(l);
    if (n > UINT64_MAX / s) throw ResourceLimit("cell count overflows 64 bits");
    n *= s;
  }
  return n;
}

std::vector<Digits> LevelSpace::cells(int depth, std::uint64_t budget) const {
  std::uint64_t n = cell_count(depth);
  if (n > budget)
    throw ResourceLimit("cell enumeration at depth " + std::to_string(depth) + " needs " +
                        std::to_string(n) + " cells, budget " + std::to_string(budget));
  std::vector<Digits> out;
  out.reserve(n);
  if (!full_product()) {
    const Digits* last = nullptr;
    for (const auto& c : admissible) {
      if (last && std::equal(c.begin(), c.begin() + depth, last->begin())) continue;
      out.emplace_back(c.begin(), c.begin() + depth);
      last = &c;
    }
    return out;
  }
  Digits cur(depth, 0);
  while (true) {
    out.push_back(cur);
    int l = depth - 1;
    while (l >= 0) {
      if (++cur[l] < levels.size(l + 1)) break;
      cur[l] = 0;
      --l;
    }
    if (l < 0) break;
  }
  return out;
}

std::uint64_t LevelSpace::cell_index(const Digits& d, int depth) const {
  if (static_cast<int>(d.size()) < depth) throw UsageError("point shallower than requested depth");
  if (!full_product()) {
    // lower_bound over admissible prefixes
    Digits key(d.begin(), d.begin() + depth);
    std::uint64_t idx = 0;
    const Digits* last = nullptr;
    for (const auto& c : admissible) {
      if (last && std::equal(c.begin(), c.begin() + depth, last->begin())) continue;
      if (std::equal(key.begin(), key.end(), c.begin())) return idx;
      ++idx;
      last = &c;
    }
    throw UsageError("digits not admissible at depth " + std::to_string(depth));
  }
  std::uint64_t idx = 0;
  for (int l = 0; l < depth; ++l) idx = idx * levels.size(l + 1) + d[l];
  return idx;
}

Digits LevelSpace::cell_digits(std::uint64_t index, int depth) const {
  if (!full_product()) {
    std::uint64_t idx = 0;
    const Digits* last = nullptr;
    for (const auto& c : admissible) {
      if (last && std::equal(c.begin(), c.begin() + depth, last->begin())) continue;
      if (idx == index) return Digits(c.begin(), c.begin() + depth);
      ++idx;
      last = &c;
    }
    throw UsageError("cell index out of range");
  }
  Digits d(depth, 0);
  for (int l = depth - 1; l >= 0; --l) {
    std::uint64_t s = levels.size(l + 1);
    d[l] = static_cast<std::uint32_t>(index % s);
    index /= s;
  }
  if (index) throw UsageError("cell index out of range");
  return d;
}

std::vector<std::uint32_t> LevelSpace::extensions(const Digits& prefix) const {
  int next = static_cast<int>(prefix.size()) + 1;
  if (full_product()) {
    std::vector<std::uint32_t> out(levels.size(next));
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  if (next > admissible_depth) throw UsageError("extension beyond tabulated admissible cells");
  std::set<std::uint32_t> seen;
  for (const auto& c : admissible)
    if (is_prefix(prefix, c)) seen.insert(c[prefix.size()]);
  return {seen.begin(), seen.end()};
}

std::uint64_t LevelSpace::refinement_count(const Digits& prefix, int to) const {
  if (to < static_cast<int>(prefix.size())) throw UsageError("refinement target above prefix depth");
  if (!full_product()) {
    if (to > admissible_depth) throw UsageError("refinement beyond tabulated admissible cells");
    std::uint64_t count = 0;
    const Digits* last = nullptr;
    for (const auto& c : admissible) {
      if (!is_prefix(prefix, c)) continue;
      if (last && std::equal(c.begin(), c.begin() + to, last->begin())) continue;
      ++count;
      last = &c;
    }
    return count;
  }
  std::uint64_t n = 1;
  for (int l = static_cast<int>(prefix.size()) + 1; l <= to; ++l) {
    std::uint64_t s = levels.size(l);
    if (n > UINT64_MAX / s) throw ResourceLimit("refinement count overflows 64 bits");
    n *= s;
  }
  return n;
}

LevelSpacePtr make_product_space(std::vector<std::uint32_t> sizes, bool coherent,
                                 std::vector<std::uint32_t> period) {
  for (auto s : sizes)
    if (s < 1) throw UsageError("alphabet size must be >= 1");
  for (auto s : period)
    if (s < 1) throw UsageError("alphabet size must be >= 1");
  auto sp = std::make_shared<LevelSpace>();
  sp->levels.prefix = std::move(sizes);
  sp->levels.period = std::move(period);
  sp->coherent = coherent;
  return sp;
}

LevelSpacePtr make_subshift_space(std::vector<std::uint32_t> sizes, std::vector<Digits> cells,
                                  int depth, bool coherent) {
  auto sp = std::make_shared<LevelSpace>();
  sp->levels.prefix = std::move(sizes);
  sp->coherent = coherent;
  sp->admissible_depth = depth;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (const auto& c : cells) {
    if (static_cast<int>(c.size()) != depth)
      throw ConstructionError("admissible cell with wrong depth");
    sp->check_point(c);
  }
  if (cells.empty()) throw ConstructionError("subshift space with no admissible cells");
  sp->admissible = std::move(cells);
  return sp;
}

std::string digits_str(const Digits& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(d[i]);
  }
  return s;
}

} // namespace mbx
