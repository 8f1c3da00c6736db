#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbx/dimension.hpp"

using namespace mbx;

TEST_CASE("dyadic fiber: box dimension log 2 / log 3 over depths 1..12") {
  auto sp = make_product_space(std::vector<std::uint32_t>(12, 2), true);
  DimensionReport rep = box_dimension_estimate(*sp, WeightedMetric::power(3), 1, 12);
  REQUIRE(rep.slope_defined);
  // oracle: exact counts 2^l at scales (3/2) 3^-(l+1)
  for (const auto& row : rep.rows) {
    CHECK(row.count == (std::uint64_t(1) << row.depth));
    CHECK(row.scale == Rat(3, 2) * Rat::inv_pow(3, row.depth + 1));
  }
  CHECK(std::abs(rep.slope - std::log(2.0) / std::log(3.0)) < 0.02);
}

TEST_CASE("single-scale table is flagged, not fit") {
  auto sp = make_product_space({5}, true);
  DimensionReport rep = box_dimension_estimate(*sp, WeightedMetric::power(3), 1, 1);
  CHECK_FALSE(rep.slope_defined);
  CHECK(rep.rows.size() == 1);
  CHECK(rep.rows[0].count == 5);
}

TEST_CASE("mixed-radix (2,3,2,3,...) fiber: slope log 6 / (2 log 3)") {
  auto sp = make_product_space({}, true, {2, 3});
  DimensionReport rep = box_dimension_estimate(*sp, WeightedMetric::power(3), 1, 12);
  REQUIRE(rep.slope_defined);
  // oracle: exhaustive cylinder count per depth
  std::uint64_t expect = 1;
  for (const auto& row : rep.rows) {
    expect *= sp->levels.size(row.depth);
    CHECK(row.count == sp->cell_count(row.depth));
    CHECK(row.count == expect);
  }
  CHECK(std::abs(rep.slope - std::log(6.0) / (2 * std::log(3.0))) < 0.03);
}

namespace {
// oracle: minimal cover of a depth-j cylinder by radius-rho balls, found by
// exhaustive inspection of the candidate cylinder cover at the quantized depth
std::uint64_t cover_oracle(const LevelSpace& sp, const WeightedMetric& m, const Digits& center,
                           int j, const Rat& rho) {
  auto nd = m.ball_depth(rho, 16);
  REQUIRE(nd);
  int target = std::max(*nd, j);
  // every candidate ball is a depth-`target` cylinder and covers exactly one cell
  Digits prefix(center.begin(), center.begin() + j);
  return sp.refinement_count(prefix, target);
}
} // namespace

TEST_CASE("doubling: dyadic fiber passes with C = 2 at depth 8") {
  auto sp = make_product_space({}, true, {2}); // rule form: resolves at every depth
  WeightedMetric m = WeightedMetric::power(3);
  LevelSpaceCounter rc(*sp);
  DoublingReport rep = doubling_check(rc, m, 2, 8, 6);
  CHECK(rep.pass);
  CHECK_FALSE(rep.witness.has_value());
  // oracle cross-check at small parameters
  Digits zero(12, 0);
  for (int j = 0; j <= 3; ++j)
    for (int n = 1; n <= 3; ++n) {
      Rat r = m.tail(j + 1);
      Rat rho = r / Rat(std::int64_t(1) << n);
      std::uint64_t needed = cover_oracle(*sp, m, zero, j, rho);
      CHECK(needed <= (std::uint64_t(1) << n));
    }
}

TEST_CASE("doubling: a fast-refining tower fails with an explicit witness") {
  // alphabet 5 per level with weights 9^-l: each halving forces a full level split
  auto sp = make_product_space({}, true, {5});
  WeightedMetric m = WeightedMetric::power(9);
  LevelSpaceCounter rc(*sp);
  DoublingReport rep = doubling_check(rc, m, 2, 4, 4);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  // the witness really violates the bound
  std::uint64_t needed = std::stoull(rep.witness->needed);
  std::uint64_t allowed = std::stoull(rep.witness->allowed);
  CHECK(needed > allowed);
}

TEST_CASE("single-point space passes for any constant") {
  auto sp = make_product_space({}, true, {1});
  LevelSpaceCounter rc(*sp);
  CHECK(doubling_check(rc, WeightedMetric::power(3), 2, 4, 4).pass);
  CHECK(doubling_check(rc, WeightedMetric::power(3), 7, 4, 4).pass);
}
