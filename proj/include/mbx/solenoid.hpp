#pragma once

#include <map>
#include <optional>
#include <set>

#include "mbx/metric.hpp"
#include "mbx/pseudogroup.hpp"

namespace mbx {

// Covering-degree sequence of a 1-D presentation over the circle: an explicit
// prefix, an eventually periodic rule, or the gap rule where the t-th degree-3
// cover is followed by 2^t degree-2 covers.  Rule forms certify which primes
// occur infinitely often, which is what exact classification needs.
struct DegreeSeq {
  enum class Rule { None, Periodic, Gap2Exp };
  Rule rule = Rule::None;
  std::vector<std::int64_t> prefix; // explicit degrees (rule None: all that is known)
  std::vector<std::int64_t> period; // Periodic: repeats after the prefix

  bool certified() const { return rule != Rule::None; }
  std::int64_t degree(std::int64_t ell) const; // 1-based
  std::int64_t known_length() const;           // INT64_MAX for rule forms

  static DegreeSeq constant(std::int64_t m) { return periodic({}, {m}); }
  static DegreeSeq explicit_prefix(std::vector<std::int64_t> p);
  static DegreeSeq periodic(std::vector<std::int64_t> pre, std::vector<std::int64_t> per);
  static DegreeSeq gap2exp();
};

using ExpMap = std::map<std::int64_t, std::int64_t>; // prime -> exponent

std::vector<std::int64_t> factor_degree(std::int64_t m); // sorted prime factors
ExpMap prefix_exponents(const DegreeSeq& s, std::int64_t len);

// least prefix length whose exponents dominate the target
struct DominationSearch {
  enum class Kind { Found, Never, Unknown } kind = Kind::Unknown;
  std::int64_t length = 0;
};
DominationSearch min_prefix_dominating(const DegreeSeq& s, const ExpMap& target);

// multiplicity of p over the whole sequence; nullopt = infinite (certified only)
std::optional<std::int64_t> total_multiplicity(const DegreeSeq& s, std::int64_t p);
std::set<std::int64_t> support_primes(const DegreeSeq& s); // primes seen in prefix/period/rule

struct PrimeMultiset {
  std::vector<std::int64_t> entries; // ordered as they appear in the factorizations
  std::string certificate;           // rule description, empty for explicit prefixes
};
PrimeMultiset prime_multiset(const DegreeSeq& s, std::int64_t horizon);

// ---- classification ------------------------------------------------------------------

struct IndexingFunctions {
  std::vector<std::int64_t> nu_of_ell; // index 0 <-> ell = 1; 0 entries mean unknown
  std::vector<std::int64_t> ell_of_nu;
};

struct TowerVerdict {
  enum class Kind { Equivalent, NotEquivalent, Inconclusive } kind = Kind::Inconclusive;
  bool exact = false; // decided from rule certificates, not just horizon evidence
  std::string reason;
  std::int64_t horizon = 0;
  IndexingFunctions indexing; // minimal functions on the tested range when available
};

TowerVerdict tower_equivalent_1d(const DegreeSeq& P, const DegreeSeq& Q, std::int64_t horizon);

struct DisplacementResult {
  enum class Kind { Finite, UnboundedTrend, Inconclusive } kind = Kind::Inconclusive;
  std::int64_t value = 0;                 // running sup at the horizon
  std::vector<std::int64_t> running_sup;  // combined sup over both indexing functions
  bool exact = false;                     // certified growth probe succeeded
  std::int64_t horizon = 0;
  std::string note;
};

// displacement of the minimal indexing functions; minimality realizes the
// infimum of Disp over all valid indexing pairs for strictly descending chains
DisplacementResult displacement_from_indexing(const IndexingFunctions& ix);
DisplacementResult displacement(const DegreeSeq& P, const DegreeSeq& Q, std::int64_t horizon);

struct LipschitzVerdict {
  TowerVerdict tower;
  DisplacementResult disp;
  enum class Kind { LipschitzEquivalent, NotLipschitzEquivalent, Inconclusive } kind =
      Kind::Inconclusive;
};

// full pipeline under the canonical weights 3^-l
LipschitzVerdict bounded_tower_equivalent(const DegreeSeq& P, const DegreeSeq& Q,
                                          std::int64_t horizon);

// ---- fiber ----------------------------------------------------------------------------

struct Fiber {
  LevelSpacePtr space;
  WeightedMetric metric;
};
Fiber fiber(const DegreeSeq& s, int depth, std::int64_t metric_base = 3);

} // namespace mbx
