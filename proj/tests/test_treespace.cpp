#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "mbx/treespace.hpp"

using namespace mbx;

namespace {
TreePattern pattern_of(int n, int radius, std::vector<TreeVertex> verts) {
  std::sort(verts.begin(), verts.end());
  return TreePattern{n, radius, std::move(verts)};
}
TreeVertex child(std::initializer_list<int> letters) {
  TreeVertex v = tree_root;
  for (int l : letters) v = tv_child(v, l);
  return v;
}
} // namespace

TEST_CASE("vertex packing: shortlex order, parents, cancellation") {
  TreeVertex a = child({0}), aa = child({0, 0}), ab = child({0, 2});
  CHECK(tv_depth(a) == 1);
  CHECK(tv_depth(aa) == 2);
  CHECK(a < aa);
  CHECK(aa < ab);
  CHECK(tv_parent(aa) == a);
  CHECK(tv_last_letter(ab) == 2);
  // a^-1 * (a b) = b ; a^-1 * b = a^-1 b
  CHECK(tv_left_cancel(ab, 0, 2) == child({2}));
  CHECK(tv_left_cancel(child({2}), 0, 2) == child({1, 2}));
  CHECK(tv_left_cancel(tree_root, 0, 2) == child({1}));
}

TEST_CASE("enumeration counts: oracle at radius one, closed form beyond") {
  // oracle: subsets of the four root edges of size >= 2
  int count1 = 0;
  for (int mask = 0; mask < 16; ++mask)
    if (__builtin_popcount(mask) >= 2) ++count1;
  CHECK(count1 == 11);

  CHECK(enumerate_points(2, 0).size() == 1);
  auto pts1 = enumerate_points(2, 1);
  CHECK(pts1.size() == 11);
  CHECK(tree_pattern_count(2, 1).to_u64() == 11);

  auto pts2 = enumerate_points(2, 2);
  CHECK(pts2.size() == 4067);
  CHECK(tree_pattern_count(2, 2).to_u64() == 4067);

  // independent oracle at radius 2: filter all subsets of the 16 non-root ball
  // vertices for parent closure, root degree >= 2, and interior extension
  {
    std::vector<TreeVertex> ballv;
    for (int a = 0; a < 4; ++a) {
      TreeVertex v = tv_child(tree_root, a);
      ballv.push_back(v);
      for (int b = 0; b < 4; ++b)
        if (b != inverse_letter(a)) ballv.push_back(tv_child(v, b));
    }
    REQUIRE(ballv.size() == 16);
    int count = 0;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
      auto in = [&](TreeVertex v) {
        for (std::size_t i = 0; i < 16; ++i)
          if (ballv[i] == v) return (mask >> i & 1u) != 0;
        return v == tree_root;
      };
      bool ok = true;
      int root_deg = 0;
      for (std::size_t i = 0; i < 16 && ok; ++i) {
        if (!(mask >> i & 1u)) continue;
        TreeVertex v = ballv[i];
        if (tv_depth(v) == 1) ++root_deg;
        if (tv_depth(v) == 2 && !in(tv_parent(v))) ok = false; // parent closure
      }
      if (ok && root_deg < 2) ok = false;
      // interior no-dead-end: every chosen depth-1 vertex has a chosen child
      for (std::size_t i = 0; i < 16 && ok; ++i) {
        if (!(mask >> i & 1u) || tv_depth(ballv[i]) != 1) continue;
        bool child = false;
        for (std::size_t j = 0; j < 16; ++j)
          if ((mask >> j & 1u) && tv_depth(ballv[j]) == 2 && tv_parent(ballv[j]) == ballv[i])
            child = true;
        if (!child) ok = false;
      }
      if (ok) ++count;
    }
    CHECK(count == 4067);
  }

  // refinement counts partition the next level
  BigUint total(0);
  for (const auto& p : pts1) total = total + tree_refinement_count(p, 2);
  CHECK(total == tree_pattern_count(2, 2));

  // super-multiplicative growth: N3 > N2^2 / N1
  BigUint n3 = tree_pattern_count(2, 3);
  CHECK(tree_pattern_count(2, 2).pow(2) < n3 * tree_pattern_count(2, 1));

  // resource error carries the exact count
  try {
    enumerate_points(2, 3, 1000);
    FAIL("expected a resource error");
  } catch (const ResourceLimit& e) {
    CHECK(std::string(e.what()).find(n3.str()) != std::string::npos);
  }
}

TEST_CASE("every enumerated pattern extends to the next radius") {
  for (int k : {1, 2})
    for (const auto& p : enumerate_points(2, k)) {
      CHECK(tree_refinement_count(p, k + 1) >= BigUint(1));
      // and the geodesic closure realizes one concrete extension
      TreePattern q = point_pattern(geodesic_closure(p), k + 1);
      CHECK(q.verts.size() > p.verts.size());
    }
}

TEST_CASE("tree distance on approximations") {
  auto pts1 = enumerate_points(2, 1);
  CHECK_FALSE(tree_distance(pts1[0], pts1[0]).has_value()); // equal at certification
  auto d = tree_distance(pts1[0], pts1[1]);
  REQUIRE(d);
  CHECK(*d == Rat(1)); // differ already at the root edges
  // full ball of radius 2 vs the same minus one depth-2 branch: distance 1/2
  TreePattern full = point_pattern(full_graph_point(2), 2);
  CHECK(full.verts.size() == 17);
  CHECK(std::binary_search(enumerate_points(2, 2).begin(), enumerate_points(2, 2).end(), full));
  TreePattern clipped = full;
  clipped.verts.erase(std::remove(clipped.verts.begin(), clipped.verts.end(), child({0, 0})),
                      clipped.verts.end());
  auto d2 = tree_distance(full, clipped);
  REQUIRE(d2);
  CHECK(*d2 == Rat(1, 2)); // agree at radius 1, differ at radius 2
}

TEST_CASE("pattern translation truncates certification") {
  TreePattern full = point_pattern(full_graph_point(2), 2);
  auto t = translate(full, 0);
  REQUIRE(t);
  CHECK(t->radius == 1);
  // a pattern without the vertex of the letter is outside the domain
  TreePattern p = pattern_of(2, 1, {tree_root, child({1}), child({2})});
  CHECK_FALSE(translate(p, 0).has_value());
  CHECK(translate(p, 1).has_value());
}

TEST_CASE("the full graph point is fixed by every translation") {
  TreePoint full = full_graph_point(2);
  for (int l = 0; l < 4; ++l) {
    auto t = translate_point(full, l);
    REQUIRE(t);
    CHECK(*t == full);
  }
  CHECK(point_vertices(full, 2).size() == 17);
}

TEST_CASE("point translation: inverse consistency and word compatibility") {
  std::mt19937_64 rng(41);
  auto pts2 = enumerate_points(2, 2);
  for (int trial = 0; trial < 120; ++trial) {
    const TreePattern& pat = pts2[rng() % pts2.size()];
    TreePoint p = geodesic_closure(pat);
    int l = static_cast<int>(rng() % 4);
    auto q = translate_point(p, l);
    if (!q) continue;
    auto back = translate_point(*q, inverse_letter(l));
    REQUIRE(back);
    CHECK(point_distance(*back, p) == Rat(0));
    // compatibility: translating by two letters equals the two-step composite
    int m = static_cast<int>(rng() % 4);
    auto two = translate_point(*q, m);
    if (two) {
      // the composite word m.l applied stepwise
      auto step = translate_point(p, l);
      REQUIRE(step);
      auto step2 = translate_point(*step, m);
      REQUIRE(step2);
      CHECK(point_distance(*two, *step2) == Rat(0));
    }
  }
}

TEST_CASE("point translation against a direct set-arithmetic oracle") {
  // oracle: expand the closure to a large radius, translate the vertex set
  // directly, truncate; must match what the canonical-form machinery reports
  std::mt19937_64 rng(2024);
  auto pts2 = enumerate_points(2, 2);
  const int R = 8;
  for (int trial = 0; trial < 80; ++trial) {
    TreePoint p = geodesic_closure(pts2[rng() % pts2.size()]);
    for (int step = 0; step < 2; ++step) {
      int l = static_cast<int>(rng() % 4);
      auto q = translate_point(p, l);
      std::vector<TreeVertex> src = point_vertices(p, R + 1);
      bool in_domain =
          std::binary_search(src.begin(), src.end(), tv_child(tree_root, l));
      REQUIRE(q.has_value() == in_domain);
      if (!q) break;
      std::vector<TreeVertex> expect;
      for (auto v : src) {
        TreeVertex w = tv_left_cancel(v, l, 2);
        if (tv_depth(w) <= R) expect.push_back(w);
      }
      std::sort(expect.begin(), expect.end());
      expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
      CHECK(point_vertices(*q, R) == expect);
      p = *q;
    }
  }
  // the same oracle confirms the full-graph point is fixed with Full modes
  TreePoint full = full_graph_point(2);
  auto t = translate_point(full, 3);
  REQUIRE(t);
  CHECK(point_vertices(*t, 4) == point_vertices(full, 4));
}

TEST_CASE("ultrametric inequality: exhaustive at radius 1, sampled at radius 2") {
  auto pts1 = enumerate_points(2, 1);
  std::vector<TreePoint> pts;
  for (const auto& p : pts1) pts.push_back(geodesic_closure(p));
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& c : pts) {
        Rat ab = point_distance(a, b), bc = point_distance(b, c), ac = point_distance(a, c);
        CHECK(ac <= std::max(ab, bc));
      }
  auto pts2 = enumerate_points(2, 2);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    TreePoint a = geodesic_closure(pts2[rng() % pts2.size()]);
    TreePoint b = geodesic_closure(pts2[rng() % pts2.size()]);
    TreePoint c = geodesic_closure(pts2[rng() % pts2.size()]);
    CHECK(point_distance(a, c) <= std::max(point_distance(a, b), point_distance(b, c)));
    CHECK(point_distance(a, b) == point_distance(b, a));
  }
}

TEST_CASE("translation system: four generators, Lipschitz constant two holds") {
  auto sys = treespace_system(2, 1);
  CHECK(sys->generators() == 4);
  AuditReport rep = lipschitz_audit(*sys, 1, 1);
  CHECK(rep.all_ok);
  for (const auto& row : rep.rows) {
    CHECK(row.max_ratio <= Rat(2));
    CHECK(Rat(1, 2) <= row.min_ratio);
  }
}

TEST_CASE("the action is not minimal at the working truncation") {
  auto sys = treespace_system(2, 1);
  MinimalityVerdict v = minimality_check(*sys, 1, 3);
  CHECK_FALSE(v.minimal);
  CHECK_FALSE(v.inconclusive);
  // at k = 2 the verdict fails fast (a two-letter orbit cannot even
  // touch the 4067 radius-2 patterns)
  auto sys2 = treespace_system(2, 2);
  MinimalityVerdict v2 = minimality_check(*sys2, 2, 2);
  CHECK_FALSE(v2.minimal);
}

TEST_CASE("expansivity witnesses exist for separated pattern pairs") {
  auto sys = treespace_system(2, 2);
  ExpansivityReport rep = expansivity_witness(*sys, Rat(1, 4), 4, 2);
  CHECK(rep.separated == rep.pairs); // distinct radius-2 patterns part at once
  CHECK(rep.unseparated.empty());
}

TEST_CASE("covering counts: slopes strictly increase, first value log2(11)") {
  CoveringReport rep = covering_counts(2, 1, 6);
  CHECK(rep.slopes_strictly_increasing);
  CHECK(rep.rows[0].count == "11");
  CHECK(rep.rows[0].dimension_slope == doctest::Approx(std::log2(11.0)));
  CHECK(rep.rows[1].count == "4067");
  // a line graph (one neighbour each way) has linear pattern counts: slopes decay
  double prev = 1e9;
  for (int k = 1; k <= 4; ++k) {
    double slope = std::log2(2.0 * k + 1) / k; // subpath counts of a line through 0
    CHECK(slope < prev);
    prev = slope;
  }
}

TEST_CASE("doubling fails immediately with the root witness") {
  TreeCounter rc(2);
  DoublingReport rep = doubling_check(rc, tree_metric(), 2, 2, 4);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->center_depth == 0);
  CHECK(rep.witness->halvings == 1);
  CHECK(rep.witness->needed == "11");
  CHECK(rep.witness->allowed == "2");
}

TEST_CASE("separated-count formula against the enumeration") {
  CHECK(treespace_separated_count(2, 0, 0).to_u64() == 11);
  CHECK(treespace_separated_count(2, 1, 0).to_u64() == 4067);
  CHECK(treespace_separated_count(2, 0, 1).to_u64() == 4067);
  CHECK(treespace_separated_count(2, 1, 1) == tree_pattern_count(2, 3));
}
