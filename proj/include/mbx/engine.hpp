#pragma once

#include <functional>
#include <memory>

#include "mbx/pseudogroup.hpp"

namespace mbx {

// A word over generators: letters +i (generator i) and -i (its inverse), 1-based,
// applied right to left.
using Word = std::vector<int>;

std::string word_str(const Word& w, const std::function<std::string(int)>& label);

// all freely reduced words of length <= alpha in shortlex order (+1 < -1 < +2 < ...)
std::vector<Word> reduced_words(int generators, int alpha);

// Finite working view of a Cantor pseudogroup action: cells at a chosen depth,
// exact representative points, exact generator action on points, exact rational
// distances.  Points are opaque digit encodings owned by the backend.
class ActionSystem {
public:
  virtual ~ActionSystem() = default;
  virtual int generators() const = 0;
  virtual std::string gen_label(int i) const = 0; // 1-based
  virtual Rat gen_lipschitz(int i) const = 0;
  virtual int min_depth() const = 0;  // least working depth engines may use
  virtual int max_depth() const = 0;  // deepest certified working depth
  virtual std::uint64_t cell_count(int depth) const = 0;
  virtual Digits representative(std::uint64_t cell, int depth) const = 0;
  virtual std::uint64_t cell_of(const Digits& point, int depth) const = 0;
  virtual std::optional<Digits> apply(int letter, const Digits& point) const = 0;
  virtual Rat dist(const Digits& a, const Digits& b) const = 0;
  virtual Rat diameter() const = 0;

  // Level-signature fast path for pair sweeps: a signature with at least `levels`
  // resolved levels such that distances follow from signatures alone.  The default
  // uses the point encoding itself (exact for prefix-table systems).
  virtual Digits signature(const Digits& point, int levels) const {
    (void)levels;
    return point;
  }
  virtual Rat dist_signatures(const Digits& a, const Digits& b) const { return dist(a, b); }

  Rat max_gen_lipschitz() const {
    Rat c(1);
    for (int i = 1; i <= generators(); ++i) c = std::max(c, gen_lipschitz(i));
    return c;
  }
  std::optional<Digits> evaluate(const Word& w, Digits p) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto q = apply(*it, p);
      if (!q) return std::nullopt;
      p = std::move(*q);
    }
    return p;
  }
};

using ActionSystemPtr = std::shared_ptr<const ActionSystem>;

// backend for prefix-table pseudogroups; the working depth may be any
// depth >= the deepest generator table
ActionSystemPtr make_table_system(Pseudogroup g);
const Pseudogroup& table_system_group(const ActionSystem& sys); // throws if not table-backed

// ---- word filtration over tables --------------------------------------------------

struct WordBallEntry {
  Word word;
  PartialMap map; // tabulated at the uniform ball depth
};

struct WordBall {
  int alpha = 0;
  int depth = 0;
  std::vector<WordBallEntry> maps;     // distinct non-empty maps, shortlex-first labels
  std::size_t empty_domain_words = 0;  // retained count of empty compositions
  bool truncated = false;              // resource budget hit
  std::uint64_t coarse_bound = 0;      // (2v+1)^alpha
};

WordBall word_ball(const Pseudogroup& g, int alpha, std::size_t budget = 200000);

// ---- orbit / minimality ------------------------------------------------------------

struct OrbitResult {
  std::vector<std::uint64_t> cells; // sorted reached cell indices at the working depth
  bool budget_hit = false;
};

OrbitResult orbit_cells(const ActionSystem& sys, const Digits& start, int alpha, int depth,
                        std::size_t budget = 1u << 20);

struct MinimalityVerdict {
  bool minimal = false;
  bool inconclusive = false;
  int depth = 0;
  int alpha = 0;
  std::uint64_t witness_from = 0, witness_missing = 0; // when not minimal
  std::string note;
};

MinimalityVerdict minimality_check(const ActionSystem& sys, int depth, int alpha,
                                   std::size_t budget = 1u << 20);

// ---- separation searches -----------------------------------------------------------

// least word length <= alpha_max making d(w.p, w.q) >= eps; records the word
std::optional<std::pair<int, Word>> separation_word(const ActionSystem& sys, const Digits& p,
                                                    const Digits& q, const Rat& eps, int alpha_max,
                                                    std::size_t budget = 1u << 18);

struct ExpansivityReport {
  Rat epsilon;
  int alpha_max = 0, depth = 0;
  std::uint64_t pairs = 0, separated = 0;
  std::vector<std::tuple<std::uint64_t, std::uint64_t, Word>> witnesses; // per separated pair
  std::vector<std::pair<std::uint64_t, std::uint64_t>> unseparated;      // evidence only
};

ExpansivityReport expansivity_witness(const ActionSystem& sys, const Rat& eps, int alpha_max,
                                      int depth);

struct EquicontinuityRow {
  Rat initial;       // distance class delta
  Rat max_image;     // sup over words of image distance, on tested pairs
  Word witness;
};

std::vector<EquicontinuityRow> equicontinuity_probe(const ActionSystem& sys, int alpha_max,
                                                    int depth);

// ---- Lipschitz audit ---------------------------------------------------------------

struct AuditRow {
  Word word;
  Rat min_ratio, max_ratio; // measured over all defined cell pairs
  Rat bound;                // C^alpha for this word length
  std::uint64_t pairs = 0;
  bool ok = true;
};

struct AuditReport {
  int alpha = 0, depth = 0;
  Rat constant;
  std::vector<AuditRow> rows;
  bool all_ok = true;
};

AuditReport lipschitz_audit(const ActionSystem& sys, int alpha, int depth);

} // namespace mbx
