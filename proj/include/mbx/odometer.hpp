#pragma once

#include "mbx/pseudogroup.hpp"

namespace mbx {

// mixed-radix value of a digit string, level 1 least significant
std::uint64_t mixed_radix_value(const std::vector<std::uint32_t>& degrees, const Digits& d);
Digits mixed_radix_digits(const std::vector<std::uint32_t>& degrees, std::uint64_t value,
                          int depth);

// Adding machine on the fiber of a covering tower with the given degrees.
// One generator per offset ("+1", "+3", ...); each is tabulated at `depth` on the
// cylinders where no carry escapes the table, which is the maximal clopen domain
// a finite table can describe.  Isometries: declared constant 1.
Pseudogroup odometer_system(const std::vector<std::uint32_t>& degrees, int depth,
                            const std::vector<std::uint32_t>& offsets = {1},
                            WeightedMetric metric = WeightedMetric::power(3));

} // namespace mbx
