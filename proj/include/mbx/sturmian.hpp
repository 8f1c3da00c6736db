#pragma once

#include "mbx/engine.hpp"

namespace mbx {

// Quadratic irrational in (0,1) given by an eventually periodic continued
// fraction; floors of integer multiples are computed exactly in integers.
struct QuadIrr {
  __int128 u = 0, v = 0, w = 1; // (u + v*sqrt(D)) / w, w > 0, v != 0
  __int128 D = 0;               // positive non-square

  static QuadIrr from_continued_fraction(const std::vector<std::int64_t>& prefix,
                                         const std::vector<std::int64_t>& period);
  std::int64_t floor_times(std::int64_t k) const; // floor(k * value)
  double to_double() const;
};

struct SturmianSpec {
  std::vector<std::int64_t> cf_prefix; // a0; a1 a2 ...
  std::vector<std::int64_t> cf_period; // repeating tail, nonempty
  int window = 2;                      // factor radius; working words have length 2*window+1
  int slack = 12;                      // extra levels used when measuring distances
  std::int64_t metric_base = 3;
};

// symbols of the coding of the rotation orbit point k, at the given offsets
std::vector<int> sturmian_symbols(const QuadIrr& a, std::int64_t k, std::int64_t lo,
                                  std::int64_t hi);

// all distinct factors of the given length (each as a 0/1 word); count must be
// length+1 or the construction fails
std::vector<std::vector<int>> sturmian_factors(const QuadIrr& a, int length);

// The shift on width-(2*window+1) windows of the Sturmian word.  The backend acts
// exactly on rotation-orbit points; cells are the admissible window words in
// center-out level order (level 1 = offset 0, then +1, -1, +2, -2, ...).
ActionSystemPtr sturmian_system(const SturmianSpec& spec);

int sturmian_offset_of_level(int level); // center-out enumeration

} // namespace mbx
