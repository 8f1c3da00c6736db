#include "mbx/treespace.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <mutex>
#include <set>

namespace mbx {

namespace {
constexpr int kDepthBits = 6;
constexpr int kLetterBits = 3;
constexpr int kMaxDepth = (64 - kDepthBits) / kLetterBits; // 19 letters
int letter_at(TreeVertex v, int i) { // 0-based from the root
  int d = tv_depth(v);
  int shift = 64 - kDepthBits - (i + 1) * kLetterBits;
  (void)d;
  return static_cast<int>((v >> shift) & 0x7u);
}
} // namespace

int tv_depth(TreeVertex v) { return static_cast<int>(v >> (64 - kDepthBits)); }

int tv_last_letter(TreeVertex v) {
  int d = tv_depth(v);
  if (d < 1) throw UsageError("root has no last letter");
  return letter_at(v, d - 1);
}

int tv_first_letter(TreeVertex v) {
  if (tv_depth(v) < 1) throw UsageError("root has no first letter");
  return letter_at(v, 0);
}

TreeVertex tv_parent(TreeVertex v) {
  int d = tv_depth(v);
  if (d < 1) throw UsageError("root has no parent");
  int shift = 64 - kDepthBits - d * kLetterBits;
  TreeVertex letters = (v & ((std::uint64_t(1) << (64 - kDepthBits)) - 1));
  letters &= ~(TreeVertex(0x7u) << shift);
  return (static_cast<TreeVertex>(d - 1) << (64 - kDepthBits)) | letters;
}

TreeVertex tv_child(TreeVertex v, int letter) {
  int d = tv_depth(v);
  if (d + 1 > kMaxDepth) throw ResourceLimit("tree vertex word too long to pack");
  int shift = 64 - kDepthBits - (d + 1) * kLetterBits;
  TreeVertex letters = (v & ((std::uint64_t(1) << (64 - kDepthBits)) - 1));
  letters |= static_cast<TreeVertex>(letter & 0x7) << shift;
  return (static_cast<TreeVertex>(d + 1) << (64 - kDepthBits)) | letters;
}

TreeVertex tv_left_cancel(TreeVertex v, int letter, int n) {
  (void)n;
  int d = tv_depth(v);
  if (d == 0) {
    TreeVertex r = tv_child(tree_root, inverse_letter(letter));
    return r;
  }
  if (letter_at(v, 0) == letter) {
    // cancel: drop the first letter
    TreeVertex out = tree_root;
    for (int i = 1; i < d; ++i) out = tv_child(out, letter_at(v, i));
    return out;
  }
  TreeVertex out = tv_child(tree_root, inverse_letter(letter));
  for (int i = 0; i < d; ++i) out = tv_child(out, letter_at(v, i));
  return out;
}

// ---- patterns -------------------------------------------------------------------------

namespace {

void check_pattern(const TreePattern& p) {
  if (p.n < 2) throw UsageError("free group rank must be >= 2");
  if (!p.contains(tree_root)) throw UsageError("pattern must contain the basepoint");
}

// children grouped by parent, verts sorted
std::map<TreeVertex, std::vector<TreeVertex>> children_of(const std::vector<TreeVertex>& verts) {
  std::map<TreeVertex, std::vector<TreeVertex>> ch;
  for (auto v : verts)
    if (tv_depth(v) > 0) ch[tv_parent(v)].push_back(v);
  return ch;
}

} // namespace

std::vector<TreePattern> enumerate_points(int n, int k, std::uint64_t budget) {
  if (n < 2) throw UsageError("free group rank must be >= 2");
  if (k < 0) throw UsageError("negative radius");
  BigUint total = tree_pattern_count(n, k);
  if (BigUint(budget) < total)
    throw ResourceLimit("radius-" + std::to_string(k) + " enumeration needs exactly " +
                        total.str() + " patterns, budget " + std::to_string(budget));
  std::vector<TreePattern> out;
  if (k == 0) {
    out.push_back(TreePattern{n, 0, {tree_root}});
    return out;
  }
  // depth-first over vertices in BFS order, choosing child subsets
  struct Frame {
    std::vector<TreeVertex> chosen;
    std::vector<TreeVertex> frontier; // vertices at current depth, in order
  };
  std::vector<int> letters_all;
  for (int l = 0; l < 2 * n; ++l) letters_all.push_back(l);

  // recursively extend all members of the frontier one level down
  std::function<void(std::vector<TreeVertex>&, const std::vector<TreeVertex>&, std::size_t,
                     std::vector<TreeVertex>&)>
      extend = [&](std::vector<TreeVertex>& chosen, const std::vector<TreeVertex>& frontier,
                   std::size_t idx, std::vector<TreeVertex>& next_frontier) {
        if (idx == frontier.size()) {
          int depth = frontier.empty() ? 0 : tv_depth(frontier[0]) + 1;
          if (depth >= k + 1) return; // done
          if (next_frontier.empty()) return;
          std::vector<TreeVertex> nf;
          extend(chosen, next_frontier, 0, nf);
          if (tv_depth(next_frontier[0]) == k) out.push_back(TreePattern{n, k, chosen});
          return;
        }
        TreeVertex v = frontier[idx];
        std::vector<int> kids;
        for (int l : letters_all)
          if (tv_depth(v) == 0 || l != inverse_letter(tv_last_letter(v))) kids.push_back(l);
        int deg_min = tv_depth(v) == 0 ? 2 : 1;
        bool at_boundary = tv_depth(v) == k;
        if (at_boundary) {
          extend(chosen, frontier, idx + 1, next_frontier);
          return;
        }
        // all child subsets of size >= deg_min
        for (std::uint32_t mask = 0; mask < (1u << kids.size()); ++mask) {
          if (__builtin_popcount(mask) < deg_min) continue;
          std::size_t base_c = chosen.size(), base_f = next_frontier.size();
          for (std::size_t b = 0; b < kids.size(); ++b)
            if (mask & (1u << b)) {
              TreeVertex c = tv_child(v, kids[b]);
              chosen.push_back(c);
              next_frontier.push_back(c);
            }
          extend(chosen, frontier, idx + 1, next_frontier);
          chosen.resize(base_c);
          next_frontier.resize(base_f);
        }
      };

  std::vector<TreeVertex> chosen{tree_root}, root_frontier{tree_root}, nf;
  extend(chosen, root_frontier, 0, nf);
  // the recursion emits patterns with verts in construction order: sort each
  for (auto& p : out) std::sort(p.verts.begin(), p.verts.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BigUint tree_extension_count(int n, int t) {
  // e(0) = 1; e(t) = (1 + e(t-1))^(2n-1) - 1  (nonempty child subsets, independent subtrees)
  BigUint e(1);
  for (int i = 1; i <= t; ++i) e = (e + BigUint(1)).pow(2 * n - 1) - BigUint(1);
  return e;
}

BigUint tree_pattern_count(int n, int k) {
  if (k == 0) return BigUint(1);
  BigUint e = tree_extension_count(n, k - 1);
  // root: subsets of 2n edges of size >= 2
  BigUint all = (e + BigUint(1)).pow(2 * n);
  BigUint small = BigUint(1) + BigUint(2 * n) * e; // size 0 and size 1
  return all - small;
}

BigUint tree_refinement_count(const TreePattern& p, int to) {
  check_pattern(p);
  if (to < p.radius) throw UsageError("refinement target above pattern radius");
  std::size_t boundary = 0;
  for (auto v : p.verts)
    if (tv_depth(v) == p.radius) ++boundary;
  if (p.radius == 0) return tree_pattern_count(p.n, to);
  return tree_extension_count(p.n, to - p.radius).pow(static_cast<unsigned>(boundary));
}

std::optional<Rat> tree_distance(const TreePattern& a, const TreePattern& b) {
  if (a.n != b.n || a.radius != b.radius)
    throw UsageError("approximations with mismatched parameters");
  if (a.verts == b.verts) return std::nullopt; // equal at certification radius
  // first radius where the vertex sets differ
  for (int r = 0; r <= a.radius; ++r) {
    auto slice = [&](const TreePattern& p) {
      std::vector<TreeVertex> s;
      for (auto v : p.verts)
        if (tv_depth(v) == r) s.push_back(v);
      return s;
    };
    if (slice(a) != slice(b)) {
      int m = r - 1; // agreement radius
      return m <= 0 ? Rat(1) : Rat(1, std::int64_t(1) << m);
    }
  }
  return std::nullopt;
}

std::optional<TreePattern> translate(const TreePattern& p, int letter) {
  check_pattern(p);
  if (p.radius < 1) return std::nullopt; // nothing certifiable
  TreeVertex target = tv_child(tree_root, letter);
  if (!p.contains(target)) return std::nullopt;
  TreePattern out;
  out.n = p.n;
  out.radius = p.radius - 1;
  for (auto v : p.verts) {
    TreeVertex w = tv_left_cancel(v, letter, p.n);
    if (tv_depth(w) <= out.radius) out.verts.push_back(w);
  }
  std::sort(out.verts.begin(), out.verts.end());
  out.verts.erase(std::unique(out.verts.begin(), out.verts.end()), out.verts.end());
  return out;
}

// ---- exact points ---------------------------------------------------------------------

TreePoint geodesic_closure(const TreePattern& p) {
  check_pattern(p);
  if (p.radius < 1) throw UsageError("points need core radius >= 1");
  TreePoint q;
  q.n = p.n;
  q.radius = p.radius;
  q.verts = p.verts;
  return q; // all boundary modes Ray
}

TreePoint full_graph_point(int n) {
  TreePoint q;
  q.n = n;
  q.radius = 1;
  q.verts.push_back(tree_root);
  for (int l = 0; l < 2 * n; ++l) q.verts.push_back(tv_child(tree_root, l));
  std::sort(q.verts.begin(), q.verts.end());
  q.full_boundary.assign(q.verts.begin(), q.verts.end());
  q.full_boundary.erase(std::remove(q.full_boundary.begin(), q.full_boundary.end(), tree_root),
                        q.full_boundary.end());
  return q;
}

std::vector<TreeVertex> point_vertices(const TreePoint& p, int radius) {
  std::vector<TreeVertex> out;
  for (auto v : p.verts)
    if (tv_depth(v) <= radius) out.push_back(v);
  if (radius <= p.radius) {
    std::sort(out.begin(), out.end());
    return out;
  }
  // continue boundary vertices: Full hangs the whole subtree, Ray goes straight
  std::vector<TreeVertex> frontier;
  std::set<TreeVertex> full(p.full_boundary.begin(), p.full_boundary.end());
  std::vector<std::pair<TreeVertex, bool>> work; // (vertex, is_full)
  for (auto v : p.verts)
    if (tv_depth(v) == p.radius) work.emplace_back(v, full.count(v) > 0);
  while (!work.empty()) {
    auto [v, isfull] = work.back();
    work.pop_back();
    if (tv_depth(v) == radius) continue;
    if (isfull) {
      for (int l = 0; l < 2 * p.n; ++l) {
        if (tv_depth(v) > 0 && l == inverse_letter(tv_last_letter(v))) continue;
        TreeVertex c = tv_child(v, l);
        out.push_back(c);
        work.emplace_back(c, true);
      }
    } else {
      TreeVertex c = tv_child(v, tv_last_letter(v));
      out.push_back(c);
      work.emplace_back(c, false);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreePattern point_pattern(const TreePoint& p, int radius) {
  TreePattern out;
  out.n = p.n;
  out.radius = radius;
  out.verts = point_vertices(p, radius);
  return out;
}

namespace {

// canonical minimal (radius, modes) form; drops vertices regenerable from modes
TreePoint shrink(int n, std::vector<TreeVertex> verts,
                 const std::set<TreeVertex>& full_at_boundary, int boundary_radius) {
  auto ch = children_of(verts);
  // tag vertices bottom-up: RayOk / FullOk / neither
  std::map<TreeVertex, int> tag; // 1 = ray, 2 = full, 0 = core required
  // process by decreasing depth
  std::vector<TreeVertex> order = verts;
  std::sort(order.begin(), order.end(),
            [](TreeVertex a, TreeVertex b) { return tv_depth(a) > tv_depth(b); });
  for (auto v : order) {
    int d = tv_depth(v);
    auto it = ch.find(v);
    if (d == boundary_radius) {
      tag[v] = full_at_boundary.count(v) ? 2 : 1;
      continue;
    }
    if (it == ch.end()) { // interior vertex with no children: dead end, keep in core
      tag[v] = 0;
      continue;
    }
    const auto& kids = it->second;
    if (d >= 1 && kids.size() == 1 && tv_last_letter(kids[0]) == tv_last_letter(v) &&
        tag[kids[0]] == 1) {
      tag[v] = 1;
      continue;
    }
    std::size_t all = d == 0 ? 2 * static_cast<std::size_t>(n)
                             : 2 * static_cast<std::size_t>(n) - 1;
    if (kids.size() == all) {
      bool allfull = true;
      for (auto c : kids) allfull = allfull && tag[c] == 2;
      if (allfull) {
        tag[v] = 2;
        continue;
      }
    }
    tag[v] = 0;
  }
  int rmin = 1;
  for (auto v : verts)
    if (tag[v] == 0) rmin = std::max(rmin, tv_depth(v) + 1);
  TreePoint out;
  out.n = n;
  out.radius = rmin;
  for (auto v : verts)
    if (tv_depth(v) <= rmin) out.verts.push_back(v);
  std::sort(out.verts.begin(), out.verts.end());
  for (auto v : out.verts)
    if (tv_depth(v) == rmin && tag[v] == 2) out.full_boundary.push_back(v);
  return out;
}

} // namespace

std::optional<TreePoint> translate_point(const TreePoint& p, int letter) {
  TreeVertex target = tv_child(tree_root, letter);
  std::vector<TreeVertex> here = point_vertices(p, 1);
  if (!std::binary_search(here.begin(), here.end(), target)) return std::nullopt;
  int rnew = p.radius + 1;
  // image vertices to radius rnew live within radius rnew + 1 of the old root
  std::vector<TreeVertex> src = point_vertices(p, rnew + 1);
  std::set<TreeVertex> full_src(p.full_boundary.begin(), p.full_boundary.end());
  // modes propagate along the expansion: recompute which depth-(rnew+1) sources are full
  std::vector<TreeVertex> img;
  std::set<TreeVertex> img_full;
  for (auto v : src) {
    TreeVertex w = tv_left_cancel(v, letter, p.n);
    if (tv_depth(w) <= rnew) img.push_back(w);
  }
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  // boundary modes of the image: a depth-rnew image vertex is Full iff its source
  // sits inside a Full continuation (or is a Full boundary vertex itself)
  std::set<TreeVertex> full_closure; // sources known to head full subtrees
  {
    std::vector<TreeVertex> worklist(p.full_boundary.begin(), p.full_boundary.end());
    std::set<TreeVertex> seen(worklist.begin(), worklist.end());
    std::vector<TreeVertex> srcver = src;
    while (!worklist.empty()) {
      TreeVertex v = worklist.back();
      worklist.pop_back();
      full_closure.insert(v);
      for (int l = 0; l < 2 * p.n; ++l) {
        if (tv_depth(v) > 0 && l == inverse_letter(tv_last_letter(v))) continue;
        if (tv_depth(v) + 1 > rnew + 1) continue;
        TreeVertex c = tv_child(v, l);
        if (std::binary_search(srcver.begin(), srcver.end(), c) && seen.insert(c).second)
          worklist.push_back(c);
      }
    }
  }
  for (auto v : src) {
    TreeVertex w = tv_left_cancel(v, letter, p.n);
    if (tv_depth(w) == rnew && full_closure.count(v)) img_full.insert(w);
  }
  return shrink(p.n, std::move(img), img_full, rnew);
}

Rat point_distance(const TreePoint& a, const TreePoint& b) {
  if (a.n != b.n) throw UsageError("points of different spaces");
  if (a == b) return Rat(0);
  int rmax = std::max(a.radius, b.radius);
  for (int r = 0; r <= rmax + 1; ++r) {
    if (point_vertices(a, r) != point_vertices(b, r)) {
      int m = r - 1;
      return m <= 0 ? Rat(1) : Rat(1, std::int64_t(1) << m);
    }
  }
  // identical out to beyond both cores with identical canonical forms handled above;
  // differing boundary modes surface at rmax + 1
  throw std::logic_error("distinct canonical points with no visible difference");
}

// ---- working system -------------------------------------------------------------------

namespace {

Digits encode_point(const TreePoint& p) {
  Digits d;
  d.push_back(static_cast<std::uint32_t>(p.radius));
  d.push_back(static_cast<std::uint32_t>(p.verts.size()));
  for (auto v : p.verts) {
    d.push_back(static_cast<std::uint32_t>(v >> 32));
    d.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  }
  d.push_back(static_cast<std::uint32_t>(p.full_boundary.size()));
  for (auto v : p.full_boundary) {
    d.push_back(static_cast<std::uint32_t>(v >> 32));
    d.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  }
  return d;
}

TreePoint decode_point(int n, const Digits& d) {
  TreePoint p;
  p.n = n;
  std::size_t i = 0;
  p.radius = static_cast<int>(d.at(i++));
  std::size_t nv = d.at(i++);
  for (std::size_t k = 0; k < nv; ++k) {
    TreeVertex v = (static_cast<TreeVertex>(d.at(i)) << 32) | d.at(i + 1);
    i += 2;
    p.verts.push_back(v);
  }
  std::size_t nf = d.at(i++);
  for (std::size_t k = 0; k < nf; ++k) {
    TreeVertex v = (static_cast<TreeVertex>(d.at(i)) << 32) | d.at(i + 1);
    i += 2;
    p.full_boundary.push_back(v);
  }
  return p;
}

class TreeSystem final : public ActionSystem {
public:
  TreeSystem(int n, int cell_depth, std::uint64_t budget) : n_(n), depth_(cell_depth) {
    cells_ = enumerate_points(n, cell_depth, budget);
    for (std::size_t i = 0; i < cells_.size(); ++i) index_.emplace(cells_[i].verts, i);
  }

  int generators() const override { return 2 * n_; }
  std::string gen_label(int i) const override {
    int letter = i - 1;
    std::string base = "abcdefg";
    std::string s(1, base[letter / 2]);
    if (letter % 2) s += "'";
    return s;
  }
  Rat gen_lipschitz(int) const override { return Rat(2); }
  int min_depth() const override { return 1; }
  int max_depth() const override { return depth_; }
  std::uint64_t cell_count(int depth) const override {
    if (depth > depth_) throw UsageError("beyond tabulated cell depth");
    if (depth == depth_) return cells_.size();
    std::set<std::vector<TreeVertex>> seen;
    for (const auto& c : cells_) {
      std::vector<TreeVertex> s;
      for (auto v : c.verts)
        if (tv_depth(v) <= depth) s.push_back(v);
      seen.insert(std::move(s));
    }
    return seen.size();
  }
  Digits representative(std::uint64_t cell, int depth) const override {
    if (depth != depth_) throw UsageError("representatives tabulated at the cell depth only");
    return encode_point(geodesic_closure(cells_[cell]));
  }
  std::uint64_t cell_of(const Digits& pd, int depth) const override {
    TreePoint p = decode_point(n_, pd);
    TreePattern pat = point_pattern(p, depth);
    if (depth != depth_) throw UsageError("cells tabulated at the cell depth only");
    auto it = index_.find(pat.verts);
    if (it == index_.end()) throw UsageError("point pattern outside the enumerated universe");
    return it->second;
  }
  std::optional<Digits> apply(int letter, const Digits& pd) const override {
    int l = letter > 0 ? letter - 1 : inverse_letter(-letter - 1);
    auto q = translate_point(decode_point(n_, pd), l);
    if (!q) return std::nullopt;
    return encode_point(*q);
  }
  Rat dist(const Digits& a, const Digits& b) const override {
    return point_distance(decode_point(n_, a), decode_point(n_, b));
  }
  Rat diameter() const override { return Rat(1); }

  // signature: interned pattern ids per radius 0..levels; distances between
  // distinct points are resolved as long as `levels` exceeds both core radii
  Digits signature(const Digits& pd, int levels) const override {
    TreePoint p = decode_point(n_, pd);
    Digits sig;
    sig.reserve(levels + 1);
    for (int r = 0; r <= levels; ++r) {
      std::vector<TreeVertex> vs = point_vertices(p, r);
      std::lock_guard<std::mutex> lock(intern_mu_);
      auto [it, fresh] = intern_.emplace(std::move(vs), next_id_);
      if (fresh) ++next_id_;
      sig.push_back(it->second);
    }
    return sig;
  }
  Rat dist_signatures(const Digits& a, const Digits& b) const override {
    std::size_t m = std::min(a.size(), b.size());
    for (std::size_t r = 0; r < m; ++r)
      if (a[r] != b[r])
        return r <= 1 ? Rat(1) : Rat(1, std::int64_t(1) << (r - 1));
    return Rat(0);
  }

  const std::vector<TreePattern>& cells() const { return cells_; }

private:
  int n_, depth_;
  std::vector<TreePattern> cells_;
  std::map<std::vector<TreeVertex>, std::uint64_t> index_;
  mutable std::mutex intern_mu_;
  mutable std::map<std::vector<TreeVertex>, std::uint32_t> intern_;
  mutable std::uint32_t next_id_ = 0;
};

} // namespace

ActionSystemPtr treespace_system(int n, int cell_depth, std::uint64_t budget) {
  if (cell_depth < 1) throw UsageError("cell depth must be >= 1");
  return std::make_shared<TreeSystem>(n, cell_depth, budget);
}

CoveringReport covering_counts(int n, int k_lo, int k_hi) {
  if (k_lo < 1 || k_hi < k_lo) throw UsageError("bad radius range");
  CoveringReport rep;
  rep.n = n;
  double prev = -1;
  rep.slopes_strictly_increasing = true;
  for (int k = k_lo; k <= k_hi; ++k) {
    BigUint c = tree_pattern_count(n, k);
    CoveringRow row;
    row.k = k;
    row.count = c.str();
    row.dimension_slope = c.log2() / k;
    if (row.dimension_slope <= prev) rep.slopes_strictly_increasing = false;
    prev = row.dimension_slope;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

BigUint treespace_separated_count(int n, int j, int ell) {
  if (j < 0 || ell < 0) throw UsageError("bad separation parameters");
  return tree_pattern_count(n, j + ell + 1);
}

GrowthSeries treespace_expansion_growth(int n, int j, int ell_lo, int ell_hi) {
  GrowthSeries s;
  s.epsilon = j == 0 ? Rat(1) : Rat(1, std::int64_t(1) << j);
  s.depth = 0; // counts are for the full space, not a truncation
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    BigUint c = treespace_separated_count(n, j, ell);
    GrowthEntry e;
    e.ell = ell;
    e.count = c.str();
    e.ln_count = c.ln();
    s.entries.push_back(std::move(e));
  }
  std::size_t m = s.entries.size(), from = m / 2;
  if (m - from >= 2) {
    std::vector<double> x, y;
    for (std::size_t i = from; i < m; ++i) {
      x.push_back(s.entries[i].ell);
      y.push_back(s.entries[i].ln_count);
    }
    auto [slope, res] = least_squares(x, y);
    s.slope = slope;
    for (double r : res) s.max_residual = std::max(s.max_residual, std::abs(r));
    s.slope_defined = true;
  }
  return s;
}

EntropyProfile treespace_entropy_profile(int n, const std::vector<int>& j_list, int ell_lo,
                                         int ell_hi) {
  EntropyProfile p;
  for (int j : j_list) p.series.push_back(treespace_expansion_growth(n, j, ell_lo, ell_hi));
  p.slopes_nondecreasing = true;
  for (std::size_t i = 1; i < p.series.size(); ++i)
    if (p.series[i].slope < p.series[i - 1].slope - 1e-12) p.slopes_nondecreasing = false;
  return p;
}

Digits tree_pattern_digits(const TreePattern& p) {
  Digits d;
  d.push_back(static_cast<std::uint32_t>(p.n));
  d.push_back(static_cast<std::uint32_t>(p.radius));
  for (auto v : p.verts) {
    d.push_back(static_cast<std::uint32_t>(v >> 32));
    d.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  }
  return d;
}

TreePattern tree_pattern_from_digits(const Digits& d) {
  TreePattern p;
  p.n = static_cast<int>(d.at(0));
  p.radius = static_cast<int>(d.at(1));
  for (std::size_t i = 2; i + 1 < d.size(); i += 2)
    p.verts.push_back((static_cast<TreeVertex>(d[i]) << 32) | d[i + 1]);
  return p;
}

BigUint TreeCounter::count(const Digits& prefix, int to) const {
  if (prefix.size() <= 1) return tree_pattern_count(n, to); // whole space
  TreePattern p = tree_pattern_from_digits(prefix);
  return tree_refinement_count(p, to);
}

std::vector<Digits> TreeCounter::centers(int depth) const {
  if (depth == 0) return {Digits{static_cast<std::uint32_t>(n)}};
  if (depth > center_budget_depth)
    throw ResourceLimit("treespace centers not enumerable at depth " + std::to_string(depth));
  std::vector<Digits> out;
  for (const auto& p : enumerate_points(n, depth)) out.push_back(tree_pattern_digits(p));
  return out;
}

WeightedMetric tree_metric() { return WeightedMetric::power(2); }

} // namespace mbx
