#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mbx/dimension.hpp"
#include "mbx/metric.hpp"

using namespace mbx;

namespace {
LevelSpacePtr dyadic(int depth) {
  return make_product_space(std::vector<std::uint32_t>(depth, 2), true);
}
} // namespace

TEST_CASE("canonical metric on the dyadic fiber") {
  auto sp = dyadic(12);
  WeightedMetric m = WeightedMetric::power(3);
  Digits zero(12, 0), one(12, 1);
  // distance of the two constant points is the full geometric tail
  CHECK(distance(*sp, m, zero, one) == Rat(1, 2));
  // first disagreement at level 3: (3/2) * 3^-3 = 1/18
  Digits u = zero, v = zero;
  v[2] = 1;
  CHECK(distance(*sp, m, u, v) == Rat(1, 18));
  CHECK(distance(*sp, m, u, u) == Rat(0));
  // symmetric
  CHECK(distance(*sp, m, v, u) == Rat(1, 18));
  CHECK(diameter(*sp, m, 12) == Rat(1, 2));
}

TEST_CASE("distance depends on the quotient prefixes, not single digits") {
  auto sp = dyadic(4);
  WeightedMetric m = WeightedMetric::power(3);
  // digits differ only at level 1, but every length->=1 prefix then differs
  Digits u{0, 1, 1, 0}, v{1, 1, 1, 0};
  CHECK(distance(*sp, m, u, v) == m.tail(1));
}

TEST_CASE("metric axioms on random triples (exact rational arithmetic)") {
  auto sp = make_product_space({2, 3, 2, 5, 2, 3}, true);
  WeightedMetric m = WeightedMetric::power(3);
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 500; ++trial) {
    Digits a(6), b(6), c(6);
    for (int l = 0; l < 6; ++l) {
      std::uint32_t s = sp->levels.size(l + 1);
      a[l] = rng() % s;
      b[l] = rng() % s;
      c[l] = rng() % s;
    }
    Rat ab = distance(*sp, m, a, b), ba = distance(*sp, m, b, a);
    Rat bc = distance(*sp, m, b, c), ac = distance(*sp, m, a, c);
    CHECK(ab == ba);
    CHECK(ac <= ab + bc);
    CHECK((ab.is_zero()) == (a == b));
  }
}

TEST_CASE("mismatched depths and digits are usage errors") {
  auto sp = dyadic(4);
  WeightedMetric m = WeightedMetric::power(3);
  CHECK_THROWS_AS(distance(*sp, m, Digits{0, 0}, Digits{0, 0, 0}), UsageError);
  CHECK_THROWS_AS(distance(*sp, m, Digits{0, 7}, Digits{0, 0}), UsageError);
}

TEST_CASE("free-product spaces sum the differing levels") {
  auto sp = make_product_space({2, 2, 2}, false);
  WeightedMetric m = WeightedMetric::power(3);
  Digits u{0, 0, 0}, v{1, 0, 1};
  CHECK(distance(*sp, m, u, v) == Rat(1, 3) + Rat(1, 27));
  CHECK(diameter(*sp, m, 3) == m.tail(1) - m.tail(4));
}

TEST_CASE("separated-tail condition") {
  CHECK(WeightedMetric::power(3).separated_tail(20));
  CHECK_FALSE(WeightedMetric::power(2).separated_tail(20)); // equality, not strict
  WeightedMetric e = WeightedMetric::explicit_list({Rat(1, 2), Rat(1, 4)}, false);
  CHECK(e.separated_tail(1)); // 1/2 > 1/4
  CHECK(e.separated_tail(2)); // 1/4 > 0: the bounded list ends
  WeightedMetric flat = WeightedMetric::explicit_list({Rat(1, 4), Rat(1, 2)}, false);
  CHECK_FALSE(flat.separated_tail(1)); // 1/4 > 1/2 fails
}

TEST_CASE("balls quantize to cylinders") {
  auto sp = dyadic(8);
  WeightedMetric m = WeightedMetric::power(3);
  Digits center{1, 0, 1, 0, 1, 0, 1, 0};
  // closed ball: r = 1/18 = tail(3) admits points first disagreeing at level 3,
  // so the ball is the depth-2 cylinder (minimal n with tail(n+1) <= r)
  CylinderSet b = ball(*sp, m, center, Rat(1, 18), 8);
  CHECK(b.prefixes == std::vector<Digits>{{1, 0}});
  // just below that quantum the ball shrinks to depth 3
  CylinderSet b2 = ball(*sp, m, center, Rat(1, 19), 8);
  CHECK(b2.prefixes == std::vector<Digits>{{1, 0, 1}});
  // radius at least the diameter: whole space
  CHECK(ball(*sp, m, center, Rat(1, 2), 8).is_whole());
  // radius 0: the center's full-depth cylinder
  CHECK(ball(*sp, m, center, Rat(0), 8).prefixes == std::vector<Digits>{center});
}

TEST_CASE("ball membership re-measured exactly (exhaustive at depth 6)") {
  auto sp = dyadic(6);
  WeightedMetric m = WeightedMetric::power(3);
  Digits center{0, 1, 1, 0, 0, 1};
  for (Rat r : {Rat(0), Rat(1, 100), Rat(1, 18), Rat(1, 6), Rat(1, 5), Rat(1, 2)}) {
    CylinderSet b = ball(*sp, m, center, r, 6);
    for (const auto& p : sp->cells(6)) {
      bool inside = distance(*sp, m, center, p) <= r;
      CHECK(inside == b.contains_prefix(p));
    }
  }
}

TEST_CASE("free-product balls need the separated tail") {
  auto sp = make_product_space({2, 2, 2}, false);
  Digits center{0, 0, 0};
  CHECK_THROWS_AS(ball(*sp, WeightedMetric::power(2), center, Rat(1, 4), 3), UnsupportedMetric);
  // with base 3 the separated tail holds and membership is exact
  WeightedMetric m3 = WeightedMetric::power(3);
  CylinderSet b = ball(*sp, m3, center, Rat(1, 3), 3);
  for (const auto& p : sp->cells(3))
    CHECK((distance(*sp, m3, center, p) <= Rat(1, 3)) == b.contains_prefix(p));
}

TEST_CASE("periodic level rules extend the alphabet sequence") {
  auto sp = make_product_space({2}, true, {3, 2});
  CHECK(sp->levels.size(1) == 2);
  CHECK(sp->levels.size(2) == 3);
  CHECK(sp->levels.size(3) == 2);
  CHECK(sp->levels.size(4) == 3);
  CHECK(sp->cell_count(3) == 12);
}
