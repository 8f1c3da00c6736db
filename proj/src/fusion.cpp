#include "mbx/fusion.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace mbx {

namespace {

// digit-level view of a table-backed piece, for exact suffix transport
const LevelSpace* table_space(const ActionSystemPtr& g) {
  try {
    return table_system_group(*g).space.get();
  } catch (const UsageError&) {
    return nullptr;
  }
}

} // namespace

struct FusedCells {
  std::vector<std::uint64_t> p2_keep; // piece-2 cells outside the identified set
};

FusedSystem::FusedSystem(FusionSpec spec) : spec_(std::move(spec)) {
  if (!spec_.g1 || !spec_.g2) throw UsageError("fusion needs two systems");
  if (spec_.pairing.empty()) throw UsageError("identified clopen sets must be nonempty");
  pair_by_v1_ = spec_.pairing;
  std::sort(pair_by_v1_.begin(), pair_by_v1_.end());
  pair_by_v2_ = spec_.pairing;
  std::sort(pair_by_v2_.begin(), pair_by_v2_.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  for (std::size_t i = 1; i < pair_by_v1_.size(); ++i)
    if (pair_by_v1_[i].first == pair_by_v1_[i - 1].first)
      throw UsageError("gluing table is not injective on V1 cells");
  for (std::size_t i = 1; i < pair_by_v2_.size(); ++i)
    if (pair_by_v2_[i].second == pair_by_v2_[i - 1].second)
      throw UsageError("gluing table is not injective on V2 cells");
  std::uint64_t n1 = spec_.g1->cell_count(spec_.d1), n2 = spec_.g2->cell_count(spec_.d2);
  for (const auto& [c1, c2] : spec_.pairing) {
    if (c1 >= n1 || c2 >= n2) throw UsageError("gluing table cell out of range");
    v2_cells_sorted_.push_back(c2);
  }
  std::sort(v2_cells_sorted_.begin(), v2_cells_sorted_.end());

  if (spec_.suffix_transport) {
    const LevelSpace* s1 = table_space(spec_.g1);
    const LevelSpace* s2 = table_space(spec_.g2);
    if (!s1 || !s2 || !s1->full_product() || !s2->full_product())
      throw UsageError("suffix transport needs full-product prefix-table pieces");
    for (int j = 1; j <= 24; ++j) {
      bool a1 = spec_.d1 + j <= spec_.g1->max_depth();
      bool a2 = spec_.d2 + j <= spec_.g2->max_depth();
      if (!a1 || !a2) break;
      if (s1->levels.size(spec_.d1 + j) != s2->levels.size(spec_.d2 + j))
        throw UsageError("suffix transport needs matching level alphabets beyond the gluing");
    }
  } else {
    if (spec_.g1->min_depth() > spec_.d1 || spec_.g2->min_depth() > spec_.d2)
      throw UsageError("projection gluing must sit at the pieces' working depth");
  }
}

bool FusedSystem::in_v1(std::uint64_t cell) const {
  auto it = std::lower_bound(pair_by_v1_.begin(), pair_by_v1_.end(),
                             std::make_pair(cell, std::uint64_t(0)));
  return it != pair_by_v1_.end() && it->first == cell;
}

bool FusedSystem::in_v2(std::uint64_t cell) const {
  return std::binary_search(v2_cells_sorted_.begin(), v2_cells_sorted_.end(), cell);
}

int FusedSystem::generators() const {
  return spec_.g1->generators() + spec_.g2->generators();
}
int FusedSystem::piece1_generators() const { return spec_.g1->generators(); }

std::string FusedSystem::gen_label(int i) const {
  int n1 = spec_.g1->generators();
  return i <= n1 ? "1:" + spec_.g1->gen_label(i) : "2:" + spec_.g2->gen_label(i - n1);
}

Rat FusedSystem::gen_lipschitz(int i) const {
  int n1 = spec_.g1->generators();
  return i <= n1 ? spec_.g1->gen_lipschitz(i) : spec_.g2->gen_lipschitz(i - n1);
}

int FusedSystem::min_depth() const {
  if (!spec_.suffix_transport) return spec_.d1;
  return std::max({spec_.g1->min_depth(), spec_.d1, spec_.d2 - spec_.d1 + spec_.g2->min_depth()});
}

int FusedSystem::max_depth() const {
  if (!spec_.suffix_transport) return spec_.d1;
  return std::min(spec_.g1->max_depth(), spec_.g2->max_depth() - spec_.d2 + spec_.d1);
}

// the working depth names piece-1 cylinders; piece-2 runs at the matching level
// (the same depth in suffix mode, its own gluing depth in projection mode)
int FusedSystem::piece2_depth(int depth) const {
  return spec_.suffix_transport ? depth - spec_.d1 + spec_.d2 : spec_.d2;
}

// piece-2 cells at the working depth that lie outside the identified set
const std::vector<std::uint64_t>& FusedSystem::p2_cells(int depth) const {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = p2_cache_.find(depth);
  if (it != p2_cache_.end()) return it->second;
  int d2 = piece2_depth(depth);
  std::vector<std::uint64_t> keep;
  std::uint64_t n2 = spec_.g2->cell_count(d2);
  for (std::uint64_t c = 0; c < n2; ++c) {
    std::uint64_t anc =
        d2 == spec_.d2 ? c : spec_.g2->cell_of(spec_.g2->representative(c, d2), spec_.d2);
    if (!in_v2(anc)) keep.push_back(c);
  }
  return p2_cache_.emplace(depth, std::move(keep)).first->second;
}

std::uint64_t FusedSystem::cell_count(int depth) const {
  if (depth < min_depth() || depth > max_depth())
    throw UsageError("fused working depth outside the certified range");
  return spec_.g1->cell_count(depth) + p2_cells(depth).size();
}

Digits FusedSystem::lift_piece1(const Digits& inner) const {
  Digits d{0};
  d.insert(d.end(), inner.begin(), inner.end());
  return d;
}
Digits FusedSystem::lift_piece2(const Digits& inner) const {
  Digits d{1};
  d.insert(d.end(), inner.begin(), inner.end());
  return d;
}

Digits FusedSystem::representative(std::uint64_t cell, int depth) const {
  std::uint64_t n1 = spec_.g1->cell_count(depth);
  if (cell < n1) return lift_piece1(spec_.g1->representative(cell, depth));
  return lift_piece2(spec_.g2->representative(p2_cells(depth)[cell - n1], piece2_depth(depth)));
}

std::uint64_t FusedSystem::cell_of(const Digits& point, int depth) const {
  Digits inner(point.begin() + 1, point.end());
  if (piece_of(point) == 0) return spec_.g1->cell_of(inner, depth);
  std::uint64_t c2 = spec_.g2->cell_of(inner, piece2_depth(depth));
  const auto& keep = p2_cells(depth);
  auto it = std::lower_bound(keep.begin(), keep.end(), c2);
  if (it == keep.end() || *it != c2)
    throw UsageError("piece-2 point resides in the identified clopen set");
  return spec_.g1->cell_count(depth) + (it - keep.begin());
}

std::optional<Digits> FusedSystem::transport_12(const Digits& inner1) const {
  std::uint64_t c1 = spec_.g1->cell_of(inner1, spec_.d1);
  auto it = std::lower_bound(pair_by_v1_.begin(), pair_by_v1_.end(),
                             std::make_pair(c1, std::uint64_t(0)));
  if (it == pair_by_v1_.end() || it->first != c1) return std::nullopt;
  Digits out = spec_.g2->representative(it->second, spec_.d2);
  if (spec_.suffix_transport)
    out.insert(out.end(), inner1.begin() + spec_.d1, inner1.end());
  return out;
}

std::optional<Digits> FusedSystem::transport_21(const Digits& inner2) const {
  std::uint64_t c2 = spec_.g2->cell_of(inner2, spec_.d2);
  auto it = std::lower_bound(
      pair_by_v2_.begin(), pair_by_v2_.end(), c2,
      [](const auto& a, std::uint64_t c) { return a.second < c; });
  if (it == pair_by_v2_.end() || it->second != c2) return std::nullopt;
  Digits out = spec_.g1->representative(it->first, spec_.d1);
  if (spec_.suffix_transport)
    out.insert(out.end(), inner2.begin() + spec_.d2, inner2.end());
  return out;
}

std::optional<Digits> FusedSystem::route_piece2_point(Digits inner2) const {
  std::uint64_t c2 = spec_.g2->cell_of(inner2, spec_.d2);
  if (!in_v2(c2)) return lift_piece2(inner2);
  auto back = transport_21(inner2);
  if (!back) return std::nullopt;
  return lift_piece1(*back);
}

std::optional<Digits> FusedSystem::apply(int letter, const Digits& point) const {
  const int n1 = spec_.g1->generators();
  const int g = letter > 0 ? letter : -letter;
  Digits inner(point.begin() + 1, point.end());
  if (g <= n1) {
    int inner_letter = letter > 0 ? g : -g;
    if (piece_of(point) == 0) {
      auto img = spec_.g1->apply(inner_letter, inner);
      if (!img) return std::nullopt;
      return lift_piece1(*img);
    }
    return spec_.group_action_1 ? std::optional<Digits>(point) : std::nullopt;
  }
  int inner_letter = letter > 0 ? g - n1 : -(g - n1);
  if (piece_of(point) == 1) {
    auto img = spec_.g2->apply(inner_letter, inner);
    if (!img) return std::nullopt;
    return route_piece2_point(std::move(*img));
  }
  auto over = transport_12(inner);
  if (!over) return spec_.group_action_2 ? std::optional<Digits>(point) : std::nullopt;
  auto img = spec_.g2->apply(inner_letter, *over);
  if (!img) return std::nullopt;
  return route_piece2_point(std::move(*img));
}

Rat FusedSystem::dist(const Digits& a, const Digits& b) const {
  // piecewise metric, distance one across pieces
  if (piece_of(a) != piece_of(b)) return Rat(1);
  Digits ia(a.begin() + 1, a.end()), ib(b.begin() + 1, b.end());
  return piece_of(a) == 0 ? spec_.g1->dist(ia, ib) : spec_.g2->dist(ia, ib);
}

Rat FusedSystem::diameter() const { return Rat(1); }

ActionSystemPtr fuse(FusionSpec spec) { return std::make_shared<FusedSystem>(std::move(spec)); }

FusedMinimality fused_minimality(const ActionSystem& fused, int depth, int alpha,
                                 std::size_t budget) {
  FusedMinimality out;
  out.verdict = minimality_check(fused, depth, alpha, budget);
  auto* f = dynamic_cast<const FusedSystem*>(&fused);
  if (f && !f->spec().suffix_transport && depth > std::max(f->spec().d1, f->spec().d2))
    out.certified = false;
  return out;
}

} // namespace mbx
