#pragma once

#include "mbx/bigint.hpp"
#include "mbx/dimension.hpp"
#include "mbx/engine.hpp"
#include "mbx/entropy.hpp"

namespace mbx {

// Pointed subtrees of the Cayley graph of the free group F_n with the ball-agreement
// metric d(T,T') = 2^-m, m the largest radius where the trees agree.
//
// Vertices are reduced words packed into 64 bits: [depth:6][letters, 3 bits each,
// most significant first].  Letter codes: 2i = generator a_{i+1}, 2i+1 = its inverse.
// Integer order on the packed form is shortlex.

using TreeVertex = std::uint64_t;

constexpr TreeVertex tree_root = 0;
int tv_depth(TreeVertex v);
int tv_last_letter(TreeVertex v); // requires depth >= 1
TreeVertex tv_parent(TreeVertex v);
TreeVertex tv_child(TreeVertex v, int letter);
// left-translate by the inverse of `letter`: w -> letter^-1 * w
TreeVertex tv_left_cancel(TreeVertex v, int letter, int n);
int tv_first_letter(TreeVertex v);

inline int inverse_letter(int letter) { return letter ^ 1; }

// Radius-k approximation: sorted vertex list, connected, containing the root,
// every interior vertex (depth < k) of degree >= 2.
struct TreePattern {
  int n = 0;
  int radius = 0;
  std::vector<TreeVertex> verts; // sorted; contains tree_root

  friend bool operator==(const TreePattern& a, const TreePattern& b) {
    return a.n == b.n && a.radius == b.radius && a.verts == b.verts;
  }
  friend bool operator<(const TreePattern& a, const TreePattern& b) {
    return a.verts < b.verts;
  }
  bool contains(TreeVertex v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
  }
};

// exhaustive enumeration of radius-k approximations; throws ResourceLimit with the
// exact count in the message when the closed-form count exceeds the budget
std::vector<TreePattern> enumerate_points(int n, int k, std::uint64_t budget = 1u << 22);

// closed-form pattern counts
BigUint tree_extension_count(int n, int t);                // ways below one boundary vertex
BigUint tree_pattern_count(int n, int k);                  // all radius-k patterns
BigUint tree_refinement_count(const TreePattern& p, int to);

// 2^-m distance between same-radius approximations; nullopt = equal at certification
std::optional<Rat> tree_distance(const TreePattern& a, const TreePattern& b);

// pattern-level translation: defined iff the vertex of `letter` lies in the tree;
// output certified to radius-1 less
std::optional<TreePattern> translate(const TreePattern& p, int letter);

// ---- exact points: eventually self-similar trees ------------------------------------

// A point of the space: core pattern + one continuation mode per boundary vertex.
// Ray continues straight (by the vertex's own last letter); Full hangs the entire
// (2n-1)-ary subtree.  Closed under translation, so the action is exact at every
// radius with no certification decay.
struct TreePoint {
  int n = 0;
  int radius = 0;
  std::vector<TreeVertex> verts;
  std::vector<TreeVertex> full_boundary; // subset of depth-`radius` verts with Full mode

  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    return a.n == b.n && a.radius == b.radius && a.verts == b.verts &&
           a.full_boundary == b.full_boundary;
  }
};

TreePoint geodesic_closure(const TreePattern& p);
TreePoint full_graph_point(int n);
std::vector<TreeVertex> point_vertices(const TreePoint& p, int radius);
TreePattern point_pattern(const TreePoint& p, int radius);
std::optional<TreePoint> translate_point(const TreePoint& p, int letter);
Rat point_distance(const TreePoint& a, const TreePoint& b); // exact 2^-m, 0 iff equal

// ---- the translation pseudogroup ------------------------------------------------------

// Working system with cells = radius-`cell_depth` patterns; generators are the 2n
// letter translations, declared Lipschitz constant 2.
ActionSystemPtr treespace_system(int n, int cell_depth, std::uint64_t budget = 1u << 22);

// covering counts N_k with per-step dimension slopes d_k = log2(N_k)/k
struct CoveringRow {
  int k = 0;
  std::string count;
  double dimension_slope = 0;
};
struct CoveringReport {
  int n = 0;
  std::vector<CoveringRow> rows;
  bool slopes_strictly_increasing = false;
};
CoveringReport covering_counts(int n, int k_lo, int k_hi);

// exact maximal (d, 2^-j, ell)-separated count for the full space: one point per
// depth-(j+ell+1) pattern separates, and deeper agreement cannot be separated
BigUint treespace_separated_count(int n, int j, int ell);
GrowthSeries treespace_expansion_growth(int n, int j, int ell_lo, int ell_hi);
EntropyProfile treespace_entropy_profile(int n, const std::vector<int>& j_list, int ell_lo,
                                         int ell_hi);

// refinement counter for doubling checks (counts via the closed form)
struct TreeCounter final : RefinementCounter {
  int n;
  int center_budget_depth; // centers enumerable up to here
  explicit TreeCounter(int rank, int center_depth = 2)
      : n(rank), center_budget_depth(center_depth) {}
  BigUint count(const Digits& prefix, int to) const override;
  std::vector<Digits> centers(int depth) const override;
};

// treespace cylinders are identified by their pattern; Digits encoding for the counter
Digits tree_pattern_digits(const TreePattern& p);
TreePattern tree_pattern_from_digits(const Digits& d);

// metric of the space in weighted form (power base 2)
WeightedMetric tree_metric();

} // namespace mbx
