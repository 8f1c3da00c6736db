#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbx/entropy.hpp"
#include "mbx/fusion.hpp"
#include "mbx/odometer.hpp"
#include "mbx/sturmian.hpp"
#include "mbx/treespace.hpp"

using namespace mbx;

namespace {

ActionSystemPtr dyadic(int depth) {
  return make_table_system(odometer_system(std::vector<std::uint32_t>(depth, 2), depth));
}

// two dyadic odometers glued over the depth-1 cylinders [0] <-> [0]
FusionSpec two_odometers(int depth) {
  FusionSpec spec;
  spec.g1 = dyadic(depth);
  spec.g2 = dyadic(depth);
  spec.d1 = spec.d2 = 1;
  spec.pairing = {{0, 0}};
  spec.group_action_1 = false;
  spec.group_action_2 = false;
  spec.suffix_transport = true;
  return spec;
}

} // namespace

TEST_CASE("glued cell arithmetic: piece one plus the piece-two complement") {
  auto fused = fuse(two_odometers(3));
  CHECK(fused->generators() == 2);
  CHECK(fused->cell_count(3) == 8 + 4);
  // representatives round-trip through cell_of
  for (std::uint64_t c = 0; c < fused->cell_count(3); ++c)
    CHECK(fused->cell_of(fused->representative(c, 3), 3) == c);
}

TEST_CASE("fusing two minimal odometers stays minimal at (3, 24)") {
  auto fused = fuse(two_odometers(3));
  // both factors are minimal at matching truncations
  CHECK(minimality_check(*dyadic(3), 3, 8).minimal);
  FusedMinimality fm = fused_minimality(*fused, 3, 24);
  CHECK(fm.verdict.minimal);
  CHECK(fm.certified);
}

TEST_CASE("an identity-only factor breaks minimality over a proper gluing") {
  FusionSpec spec = two_odometers(3);
  Pseudogroup idle;
  idle.space = make_product_space({2, 2, 2}, true);
  idle.metric = WeightedMetric::power(3);
  PartialMap id = refine(*idle.space, identity_map(), 3);
  id.label = "id";
  idle.gens.push_back(id);
  spec.g2 = make_table_system(idle);
  auto fused = fuse(spec);
  FusedMinimality fm = fused_minimality(*fused, 3, 24);
  CHECK_FALSE(fm.verdict.minimal);
  CHECK_FALSE(fm.verdict.inconclusive);
}

TEST_CASE("conjugation correctness on the identified clopen set") {
  FusionSpec spec = two_odometers(3);
  auto fused_sys = fuse(spec);
  const auto* fused = dynamic_cast<const FusedSystem*>(fused_sys.get());
  REQUIRE(fused);
  // for points of V1 (piece-1 prefix 0), the second generator acts as
  // transport -> odometer step -> transport back, pointwise at table depth
  for (std::uint64_t x = 0; x < 4; ++x) {
    Digits inner = mixed_radix_digits({2, 2, 2}, 2 * x, 3); // prefix digit 0 cells
    REQUIRE(inner[0] == 0);
    Digits p = fused->lift_piece1(inner);
    auto img = fused_sys->apply(2, p); // the piece-2 generator
    REQUIRE(img);
    // oracle: through the identification the point is the same digit string in
    // piece-2 coordinates; +1 there, then route back
    std::uint64_t val = mixed_radix_value({2, 2, 2}, inner);
    std::uint64_t moved = (val + 1) % 8;
    Digits expect = mixed_radix_digits({2, 2, 2}, moved, 3);
    if (expect[0] == 0) {
      CHECK(*img == fused->lift_piece1(expect));
    } else {
      CHECK(*img == fused->lift_piece2(expect));
    }
  }
}

TEST_CASE("orbit containment: the fused system extends native piece-one orbits") {
  FusionSpec spec = two_odometers(3);
  auto fused = fuse(spec);
  auto native = spec.g1;
  Digits start{0, 1, 0};
  OrbitResult nat = orbit_cells(*native, start, 5, 3);
  const auto* f = dynamic_cast<const FusedSystem*>(fused.get());
  OrbitResult fus = orbit_cells(*fused, f->lift_piece1(start), 5, 3);
  // native piece-1 cells carry the same indices inside the fused system
  for (auto c : nat.cells)
    CHECK(std::binary_search(fus.cells.begin(), fus.cells.end(), c));
}

TEST_CASE("full identification adjoins conjugated generators on a common space") {
  // paper-style fusion: identify the whole odometer fiber with the whole second
  // fiber; the fused system has nu1 + nu2 generators acting on piece 1
  FusionSpec spec;
  spec.g1 = dyadic(3);
  spec.g2 = dyadic(3);
  spec.d1 = spec.d2 = 3;
  for (std::uint64_t c = 0; c < 8; ++c) spec.pairing.emplace_back(c, c);
  spec.suffix_transport = true;
  auto fused = fuse(spec);
  CHECK(fused->generators() == 2);
  CHECK(fused->cell_count(3) == 8); // no piece-2 remainder
  FusedMinimality fm = fused_minimality(*fused, 3, 10);
  CHECK(fm.verdict.minimal);
}

TEST_CASE("treespace fused with an odometer over a full identification is minimal") {
  // the 11 radius-1 patterns identified with an 11-adic odometer level;
  // the adjoined rotation makes the non-minimal translation action minimal
  FusionSpec spec;
  spec.g1 = treespace_system(2, 1);
  spec.g2 = make_table_system(odometer_system({11}, 1));
  spec.d1 = spec.d2 = 1;
  for (std::uint64_t c = 0; c < 11; ++c) spec.pairing.emplace_back(c, c);
  spec.group_action_2 = true; // the odometer is a global action
  spec.suffix_transport = false;
  auto fused = fuse(spec);
  CHECK(fused->generators() == 5);
  CHECK_FALSE(minimality_check(*spec.g1, 1, 12).minimal);
  FusedMinimality fm = fused_minimality(*fused, 1, 12);
  CHECK(fm.verdict.minimal);
  CHECK(fm.certified); // projection transport, but checked at the identification depth

  // expansion growth of the fusion dominates the treespace factor pointwise
  for (Rat eps : {Rat(1), Rat(1, 2)}) {
    for (int ell = 0; ell <= 3; ++ell) {
      SeparationInstance a{fused.get(), eps, ell, 1, true, 4000, 2000000};
      SeparationInstance b{spec.g1.get(), eps, ell, 1, true, 4000, 2000000};
      CHECK(max_separated(a).count >= max_separated(b).count);
    }
  }
}

TEST_CASE("odometer glued to a Sturmian shift over a matching clopen") {
  // V1 = the depth-1 cylinder [0] of the dyadic fiber (4 cells at depth 3);
  // V2 = four of the six width-5 window cells of the golden shift
  SturmianSpec sspec;
  sspec.cf_prefix = {0};
  sspec.cf_period = {1};
  sspec.window = 2;
  FusionSpec spec;
  spec.g1 = dyadic(3);
  spec.g2 = sturmian_system(sspec);
  spec.d1 = 3;
  spec.d2 = 5;
  for (std::uint64_t c = 0; c < 4; ++c) spec.pairing.emplace_back(c, c);
  spec.suffix_transport = false;
  auto fused = fuse(spec);
  CHECK(fused->generators() == 1 + 1); // nu1 + nu2
  // glued cylinder counts follow the disjoint-union arithmetic
  CHECK(fused->cell_count(3) == 8 + (6 - 4));
  for (std::uint64_t c = 0; c < fused->cell_count(3); ++c)
    CHECK(fused->cell_of(fused->representative(c, 3), 3) == c);
}

TEST_CASE("gluing tables must be bijective") {
  FusionSpec spec = two_odometers(2);
  spec.pairing = {{0, 0}, {0, 1}};
  CHECK_THROWS_AS(fuse(spec), UsageError);
  FusionSpec spec2 = two_odometers(2);
  spec2.pairing = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(fuse(spec2), UsageError);
}

TEST_CASE("suffix transport demands matching towers beyond the gluing") {
  FusionSpec spec;
  spec.g1 = make_table_system(odometer_system({2, 2, 2}, 3));
  spec.g2 = make_table_system(odometer_system({2, 3, 2}, 3));
  spec.d1 = spec.d2 = 1;
  spec.pairing = {{0, 0}};
  spec.suffix_transport = true;
  CHECK_THROWS_AS(fuse(spec), UsageError);
  // projection mode glues at the pieces' working depth: one depth-3 cell each
  FusionSpec proj;
  proj.g1 = spec.g1;
  proj.g2 = spec.g2;
  proj.d1 = proj.d2 = 3;
  proj.pairing = {{0, 0}};
  proj.suffix_transport = false;
  auto fused = fuse(proj);
  CHECK(fused->cell_count(3) == 8 + 11);
  // gluing below the pieces' working depth cannot act on points
  FusionSpec shallow = proj;
  shallow.d1 = shallow.d2 = 1;
  CHECK_THROWS_AS(fuse(shallow), UsageError);
}
