#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbx/bigint.hpp"
#include "mbx/rational.hpp"

using namespace mbx;

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-1, -2) == Rat(1, 2));
  CHECK(Rat(1, -2) == Rat(-1, 2));
  CHECK(Rat(3, 7) * Rat(7, 3) == Rat(1));
  CHECK(Rat(1, 3) - Rat(1, 3) == Rat(0));
  CHECK((Rat(1, 3) - Rat(1, 3)).den == 1);
  CHECK(Rat(1, 6) < Rat(1, 5));
  CHECK(Rat(5, 3) / Rat(5, 3) == Rat(1));
  CHECK(Rat::inv_pow(3, 3) == Rat(1, 27));
  CHECK(Rat(7, 2).str() == "7/2");
  CHECK(Rat(4).str() == "4");
}

TEST_CASE("geometric sums match closed forms") {
  // sum_{l=1..24} 3^-l plus the closed-form tail is exactly 1/2
  Rat s(0);
  for (int l = 1; l <= 24; ++l) s = s + Rat::inv_pow(3, l);
  Rat tail = Rat::inv_pow(3, 24) / Rat(2);
  CHECK(s + tail == Rat(1, 2));
}

TEST_CASE("overflow throws instead of wrapping") {
  Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, ArithmeticOverflow);
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("big integers: arithmetic, powers, decimal printing") {
  BigUint a(1234567890123456789ull);
  CHECK(a.str() == "1234567890123456789");
  CHECK((BigUint(10).pow(30)).str() == "1" + std::string(30, '0'));
  CHECK((BigUint(2).pow(108) - BigUint(1)).str() ==
        "324518553658426726783156020576255");
  CHECK(BigUint(7) * BigUint(8) == BigUint(56));
  CHECK(BigUint(100) - BigUint(58) == BigUint(42));
  CHECK(BigUint(2).pow(64).bit_length() == 65);
  // ln: compare against 108*ln 2
  double l = BigUint(2).pow(108).ln();
  CHECK(l == doctest::Approx(108 * std::log(2.0)).epsilon(1e-12));
  CHECK(BigUint(1u << 20).log2() == doctest::Approx(20.0));
  CHECK(BigUint(0).is_zero());
}
