#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbx/errors.hpp"

namespace mbx {

using Digits = std::vector<std::uint32_t>;

// Per-level alphabet sizes: explicit prefix, optionally continued by a repeating period.
struct Levels {
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> period; // empty = sequence ends at the prefix

  bool bounded() const { return period.empty(); }

  // 1-based level index
  std::uint32_t size(int level) const {
    if (level < 1) throw UsageError("level index must be >= 1");
    std::size_t i = static_cast<std::size_t>(level) - 1;
    if (i < prefix.size()) return prefix[i];
    if (period.empty())
      throw UsageError("level " + std::to_string(level) + " beyond bounded level structure");
    return period[(i - prefix.size()) % period.size()];
  }

  int known_depth() const { return static_cast<int>(prefix.size()); } // meaningful when bounded
};

// A Cantor space presented as digit strings over per-level finite alphabets.
// coherent: a digit string is the truncation of an inverse-limit point, so two
// points disagreeing at level l disagree at every deeper level.
// cells: optional explicit list of admissible digit strings at a fixed depth
// (subshift-style spaces); absent means the full product is admissible.
struct LevelSpace {
  Levels levels;
  bool coherent = true;
  std::string name;

  int admissible_depth = 0;          // depth of the explicit cell list, 0 = full product
  std::vector<Digits> admissible;    // sorted lexicographically, distinct

  bool full_product() const { return admissible.empty(); }

  void check_point(const Digits& d) const {
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] >= levels.size(static_cast<int>(i) + 1))
        throw UsageError("digit out of alphabet at level " + std::to_string(i + 1));
  }

  // number of depth-d cells (admissible digit strings of length d)
  std::uint64_t cell_count(int depth) const;

  // all depth-d cells in lexicographic order; throws ResourceLimit beyond budget
  std::vector<Digits> cells(int depth, std::uint64_t budget = 1u << 22) const;

  // index of the depth-d cell holding the given digits (prefix is taken)
  std::uint64_t cell_index(const Digits& d, int depth) const;

  // digits of the cell with the given index at depth d
  Digits cell_digits(std::uint64_t index, int depth) const;

  // admissible one-level extensions of a prefix
  std::vector<std::uint32_t> extensions(const Digits& prefix) const;

  // number of admissible depth-`to` strings extending the given prefix
  std::uint64_t refinement_count(const Digits& prefix, int to) const;
};

using LevelSpacePtr = std::shared_ptr<const LevelSpace>;

LevelSpacePtr make_product_space(std::vector<std::uint32_t> sizes, bool coherent = true,
                                 std::vector<std::uint32_t> period = {});

// space whose admissible strings at `depth` are given explicitly
LevelSpacePtr make_subshift_space(std::vector<std::uint32_t> sizes, std::vector<Digits> cells,
                                  int depth, bool coherent);

inline bool is_prefix(const Digits& p, const Digits& d) {
  if (p.size() > d.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != d[i]) return false;
  return true;
}

std::string digits_str(const Digits& d);

} // namespace mbx
