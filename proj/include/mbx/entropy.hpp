#pragma once

#include "mbx/engine.hpp"

namespace mbx {

// Geometric entropy data for one (epsilon, word-length budget) pair: the maximal
// cardinality of a set of working cells that is pairwise (d, eps, ell)-separated.
// Word length is counted globally (an upper bound for the germ-local length the
// definition of separated sets uses); reports carry this convention.

struct SeparationInstance {
  const ActionSystem* sys = nullptr;
  Rat epsilon;
  int ell = 0;
  int depth = 1;
  bool exact = true;                    // exact maximum vs greedy lower bound
  std::uint64_t cell_budget = 5000;     // exact mode refuses beyond this
  std::uint64_t node_budget = 2000000;  // clique search budget before greedy fallback
};

struct SeparatedResult {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> witness; // separated cell indices
  bool exact = false;
  bool fallback = false; // exact requested, budget forced greedy
};

SeparatedResult max_separated(const SeparationInstance& inst);

struct GrowthEntry {
  int ell = 0;
  std::string count;  // exact decimal
  double ln_count = 0;
  bool exact = true;
};

struct GrowthSeries {
  Rat epsilon;
  int depth = 0;
  std::vector<GrowthEntry> entries;
  double slope = 0;          // least squares of ln(count) vs ell over the upper half
  double max_residual = 0;
  bool slope_defined = false;
};

GrowthSeries expansion_growth(const ActionSystem& sys, const Rat& eps, int ell_lo, int ell_hi,
                              int depth, bool exact = true);

struct EntropyProfile {
  std::vector<GrowthSeries> series; // one per epsilon, in the given (decreasing) order
  // finite-range trend toward the epsilon -> 0 limit; evidence, not the limit
  bool slopes_nondecreasing = false;
};

EntropyProfile entropy_profile(const ActionSystem& sys, const std::vector<Rat>& eps_list,
                               int ell_lo, int ell_hi, int depth, bool exact = true);

// least-squares slope + residuals for y against x
std::pair<double, std::vector<double>> least_squares(const std::vector<double>& x,
                                                     const std::vector<double>& y);

// exact maximum clique on an explicit adjacency relation (the solver behind
// exact separation maxima); exposed so tests can pit it against brute force
std::vector<std::uint64_t> max_clique_exact(
    std::uint64_t n, const std::function<bool(std::uint64_t, std::uint64_t)>& adjacent,
    std::uint64_t node_budget = 2000000);

} // namespace mbx
