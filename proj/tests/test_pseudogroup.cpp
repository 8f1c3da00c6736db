#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mbx/engine.hpp"
#include "mbx/odometer.hpp"

using namespace mbx;

namespace {

Pseudogroup dyadic_odometer(int depth, std::vector<std::uint32_t> offsets = {1}) {
  return odometer_system(std::vector<std::uint32_t>(depth, 2), depth, offsets);
}

// oracle: mixed-radix addition with carry, i.e. +o mod the full cell count
Digits add_oracle(const std::vector<std::uint32_t>& degrees, const Digits& d, std::int64_t o) {
  std::uint64_t M = 1;
  for (auto m : degrees) M *= m;
  std::uint64_t x = mixed_radix_value(degrees, d);
  std::uint64_t y = (x + static_cast<std::uint64_t>(((o % (std::int64_t)M) + M)) ) % M;
  return mixed_radix_digits(degrees, y, degrees.size());
}

} // namespace

TEST_CASE("compose: identity, inverses, and the +2 map against the carry oracle") {
  Pseudogroup g = dyadic_odometer(5);
  const LevelSpace& sp = *g.space;
  PartialMap id = identity_map();
  PartialMap step = g.gens[0];

  PartialMap idstep = compose(sp, refine(sp, id, 5), step);
  CHECK(idstep.rules == step.rules);

  PartialMap back = compose(sp, inverse(step), step);
  for (const auto& [in, out] : back.rules) CHECK(in == out); // identity on dom
  CHECK(back.rules.size() == 32);

  PartialMap two = compose(sp, step, step);
  std::vector<std::uint32_t> degrees(5, 2);
  for (const auto& [in, out] : two.rules) CHECK(out == add_oracle(degrees, in, 2));
  CHECK(two.rules.size() == 32);
}

TEST_CASE("evaluate applies letters right to left, carry wraps through all levels") {
  Pseudogroup g = dyadic_odometer(4);
  auto sys = make_table_system(g);
  Digits allmax{1, 1, 1, 1};
  auto img = sys->evaluate({1}, allmax);
  REQUIRE(img);
  CHECK(*img == Digits{0, 0, 0, 0});
  // empty word
  auto idimg = sys->evaluate({}, allmax);
  CHECK(*idimg == allmax);
  // mixed radix: (2,3,2): value 0 +5 = 5 -> digits (1,2,0)
  Pseudogroup h = odometer_system({2, 3, 2}, 3);
  auto hs = make_table_system(h);
  Digits p{0, 0, 0};
  Digits cur = p;
  for (int i = 0; i < 5; ++i) cur = *hs->apply(1, cur);
  CHECK(cur == add_oracle({2, 3, 2}, p, 5));
}

TEST_CASE("word ball of the dyadic odometer: distinct translations only") {
  Pseudogroup g = dyadic_odometer(5);
  WordBall zero = word_ball(g, 0);
  CHECK(zero.maps.size() == 1);
  CHECK(zero.maps[0].word.empty()); // just the identity
  WordBall ball = word_ball(g, 3);
  // oracle: words of length <= 3 over one generator give translations -3..+3,
  // distinct as residues mod 32
  CHECK(ball.maps.size() == 7);
  CHECK(ball.empty_domain_words == 0);
  CHECK(ball.coarse_bound == 27); // (2*1+1)^3
  CHECK(ball.maps.size() <= ball.coarse_bound);
}

TEST_CASE("word ball of a two-generator system, deduplicated by map graphs") {
  Pseudogroup g = dyadic_odometer(5, {1, 3});
  WordBall ball = word_ball(g, 2);
  // oracle: translations by 0, +-1, +-3, +-2, +-4, +-6: 11 distinct residues mod 32
  CHECK(ball.maps.size() == 11);
  CHECK(ball.maps.size() <= 25); // (2*2+1)^2
}

TEST_CASE("orbit is monotone in the word budget and minimality is certified") {
  Pseudogroup g = dyadic_odometer(3);
  auto sys = make_table_system(g);
  Digits start{0, 0, 0};
  std::vector<std::uint64_t> prev;
  for (int alpha = 0; alpha <= 8; ++alpha) {
    OrbitResult orb = orbit_cells(*sys, start, alpha, 3);
    CHECK(std::includes(orb.cells.begin(), orb.cells.end(), prev.begin(), prev.end()));
    prev = orb.cells;
  }
  CHECK(prev.size() == 8);

  // minimal at (3, 8): every cell reaches every cell within 8 letters
  MinimalityVerdict v = minimality_check(*sys, 3, 8);
  CHECK(v.minimal);
  // and with the word budget below the cell count it still passes via inverses
  MinimalityVerdict v2 = minimality_check(*sys, 3, 7);
  CHECK(v2.minimal);
  // word budget 3 cannot join antipodal cells
  MinimalityVerdict v3 = minimality_check(*sys, 3, 3);
  CHECK_FALSE(v3.minimal);
  CHECK_FALSE(v3.inconclusive);
}

TEST_CASE("odometer minimality passes whenever alpha reaches the cell count") {
  for (auto degs : {std::vector<std::uint32_t>{2, 2}, std::vector<std::uint32_t>{2, 3},
                    std::vector<std::uint32_t>{3, 2, 2}}) {
    Pseudogroup g = odometer_system(degs, degs.size());
    auto sys = make_table_system(g);
    std::uint64_t M = 1;
    for (auto m : degs) M *= m;
    MinimalityVerdict v = minimality_check(*sys, degs.size(), static_cast<int>(M));
    CHECK(v.minimal);
  }
}

TEST_CASE("identity-only pseudogroup is not minimal") {
  Pseudogroup g;
  g.space = make_product_space({2, 2}, true);
  g.metric = WeightedMetric::power(3);
  PartialMap id = refine(*g.space, identity_map(), 2);
  id.label = "id";
  g.gens.push_back(id);
  auto sys = make_table_system(g);
  MinimalityVerdict v = minimality_check(*sys, 2, 6);
  CHECK_FALSE(v.minimal);
}

TEST_CASE("odometers act by isometries: audit ratios exactly one") {
  Pseudogroup g = odometer_system({2, 3, 5}, 3);
  auto sys = make_table_system(g);
  AuditReport rep = lipschitz_audit(*sys, 3, 3);
  CHECK(rep.all_ok);
  for (const auto& row : rep.rows) {
    if (row.pairs == 0) continue;
    CHECK(row.min_ratio == Rat(1));
    CHECK(row.max_ratio == Rat(1));
  }
}

TEST_CASE("word-length distortion bound, exhaustively at depth 4") {
  // a non-isometric but bi-Lipschitz table: swap two level-2 digits below prefix 0
  Pseudogroup g = dyadic_odometer(4);
  PartialMap tw;
  tw.depth = 2;
  tw.label = "swap";
  tw.lipschitz = Rat(3);
  tw.rules = {{{0, 0}, {0, 1}}, {{0, 1}, {0, 0}}, {{1, 0}, {1, 0}}, {{1, 1}, {1, 1}}};
  g.gens.push_back(tw);
  auto sys = make_table_system(g);
  AuditReport rep = lipschitz_audit(*sys, 3, 4);
  CHECK(rep.all_ok); // every word within [C^-a, C^a]
}

TEST_CASE("declared constants are validated at construction") {
  Pseudogroup g = dyadic_odometer(3);
  PartialMap bad;
  bad.depth = 2;
  bad.label = "bad";
  bad.lipschitz = Rat(1); // actual distortion exceeds 1
  bad.rules = {{{0, 0}, {0, 0}}, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}}, {{1, 1}, {1, 1}}};
  g.gens.push_back(bad);
  CHECK_THROWS_AS(make_table_system(g), ConstructionError);
}

TEST_CASE("expansivity: odometers admit no witness below the diameter") {
  Pseudogroup g = dyadic_odometer(4);
  auto sys = make_table_system(g);
  ExpansivityReport rep = expansivity_witness(*sys, Rat(1, 3), 5, 4);
  // pairs already at distance >= 1/3 separate with the empty word; all others never
  for (const auto& [i, j, w] : rep.witnesses) CHECK(w.empty());
  for (const auto& [i, j] : rep.unseparated)
    CHECK(sys->dist(sys->representative(i, 4), sys->representative(j, 4)) < Rat(1, 3));
}

TEST_CASE("equicontinuity probe reports per-class suprema (isometry: unchanged)") {
  Pseudogroup g = dyadic_odometer(3);
  auto sys = make_table_system(g);
  auto rows = equicontinuity_probe(*sys, 4, 3);
  for (const auto& row : rows) CHECK(row.max_image == row.initial);
}

TEST_CASE("inverse consistency on random words") {
  Pseudogroup g = odometer_system({2, 3, 2, 2}, 4, {1, 3});
  const LevelSpace& sp = *g.space;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int len = 1 + static_cast<int>(rng() % 3);
    PartialMap m = refine(sp, identity_map(), 4);
    PartialMap minv = m;
    for (int i = 0; i < len; ++i) {
      const PartialMap& gen = g.gens[rng() % g.gens.size()];
      m = compose(sp, m, gen);
      minv = compose(sp, inverse(gen), minv);
    }
    PartialMap round = compose(sp, minv, m);
    for (const auto& [in, out] : round.rules) CHECK(in == out);
    CHECK(round.rules.size() == m.rules.size());
  }
}

TEST_CASE("empty-domain compositions are retained as flagged values") {
  // two maps with disjoint supports compose to the empty map
  Pseudogroup g;
  g.space = make_product_space({2, 2}, true);
  g.metric = WeightedMetric::power(3);
  PartialMap f;
  f.depth = 1;
  f.label = "f";
  f.rules = {{{0}, {0}}};
  PartialMap h;
  h.depth = 1;
  h.label = "h";
  h.rules = {{{1}, {1}}};
  g.gens = {f, h};
  PartialMap e = compose(*g.space, f, h);
  CHECK(e.empty_domain());
  WordBall ball = word_ball(g, 2);
  CHECK(ball.empty_domain_words > 0);
  for (const auto& entry : ball.maps) CHECK_FALSE(entry.map.empty_domain());
}
