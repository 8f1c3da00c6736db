#include "mbx/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "mbx/kernels.hpp"

namespace mbx {

std::string word_str(const Word& w, const std::function<std::string(int)>& label) {
  if (w.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    int l = w[i];
    s += l > 0 ? label(l) : label(-l) + "^-1";
  }
  return s;
}

namespace {
inline int letter_rank(int l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
} // namespace

std::vector<Word> reduced_words(int generators, int alpha) {
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  std::vector<int> letters;
  for (int i = 1; i <= generators; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  std::sort(letters.begin(), letters.end(),
            [](int a, int b) { return letter_rank(a) < letter_rank(b); });
  for (int len = 1; len <= alpha; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int l : letters) {
        if (!w.empty() && w.back() == -l) continue; // free reduction
        Word e = w;
        e.push_back(l);
        next.push_back(std::move(e));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// ---- table-backed system -----------------------------------------------------------

namespace {

class TableSystem final : public ActionSystem {
public:
  explicit TableSystem(Pseudogroup g) : g_(std::move(g)) {
    if (g_.gens.empty()) throw ConstructionError("pseudogroup needs at least one generator");
    for (const auto& f : g_.gens) validate_map(*g_.space, g_.metric, f);
    for (const auto& f : g_.gens) inv_.push_back(inverse(f));
  }

  int generators() const override { return static_cast<int>(g_.gens.size()); }
  std::string gen_label(int i) const override { return g_.gens[i - 1].label; }
  Rat gen_lipschitz(int i) const override { return g_.gens[i - 1].lipschitz; }
  int min_depth() const override { return std::max(1, g_.max_table_depth()); }
  int max_depth() const override {
    if (!g_.space->full_product()) return g_.space->admissible_depth;
    if (g_.space->levels.bounded()) return g_.space->levels.known_depth();
    return 64;
  }
  std::uint64_t cell_count(int depth) const override { return g_.space->cell_count(depth); }
  Digits representative(std::uint64_t cell, int depth) const override {
    return g_.space->cell_digits(cell, depth);
  }
  std::uint64_t cell_of(const Digits& p, int depth) const override {
    return g_.space->cell_index(p, depth);
  }
  std::optional<Digits> apply(int letter, const Digits& p) const override {
    if (letter == 0 || std::abs(letter) > generators()) throw UsageError("letter out of range");
    return letter > 0 ? g_.gens[letter - 1].apply(p) : inv_[-letter - 1].apply(p);
  }
  Rat dist(const Digits& a, const Digits& b) const override {
    return distance(*g_.space, g_.metric, a, b);
  }
  Rat diameter() const override { return mbx::diameter(*g_.space, g_.metric, max_depth()); }

  const Pseudogroup& group() const { return g_; }

private:
  Pseudogroup g_;
  std::vector<PartialMap> inv_;
};

} // namespace

ActionSystemPtr make_table_system(Pseudogroup g) {
  return std::make_shared<TableSystem>(std::move(g));
}

const Pseudogroup& table_system_group(const ActionSystem& sys) {
  auto* t = dynamic_cast<const TableSystem*>(&sys);
  if (!t) throw UsageError("operation requires a prefix-table pseudogroup");
  return t->group();
}

// ---- word ball ----------------------------------------------------------------------

WordBall word_ball(const Pseudogroup& g, int alpha, std::size_t budget) {
  if (alpha < 0) throw UsageError("alpha must be >= 0");
  const LevelSpace& sp = *g.space;
  const int depth = g.max_table_depth();
  const int nu = static_cast<int>(g.gens.size());

  std::vector<PartialMap> letter_maps; // +1,-1,+2,-2,...
  for (int i = 0; i < nu; ++i) {
    letter_maps.push_back(refine(sp, g.gens[i], depth));
    letter_maps.push_back(refine(sp, inverse(g.gens[i]), depth));
  }

  WordBall ball;
  ball.alpha = alpha;
  ball.depth = depth;
  {
    __int128 b = 1;
    for (int i = 0; i < alpha; ++i) b *= (2 * nu + 1);
    ball.coarse_bound = b > (__int128)UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(b);
  }

  std::map<std::vector<std::pair<Digits, Digits>>, Word> seen;
  struct Item {
    Word word;
    PartialMap map;
  };
  std::deque<Item> frontier;
  PartialMap id = refine(sp, identity_map(), depth);
  seen.emplace(id.rules, Word{});
  ball.maps.push_back({Word{}, id});
  frontier.push_back({Word{}, std::move(id)});

  for (int len = 1; len <= alpha; ++len) {
    std::deque<Item> next;
    for (const auto& it : frontier)
      for (int r = 0; r < 2 * nu; ++r) {
        int letter = (r % 2 == 0) ? r / 2 + 1 : -(r / 2 + 1);
        if (!it.word.empty() && it.word.back() == -letter) continue;
        Word w = it.word;
        w.push_back(letter);
        // appending on the right composes on the inside: map(w) = map(prefix) o letter
        PartialMap m = compose(sp, it.map, letter_maps[r]);
        m.label = word_str(w, [&](int i) { return g.gens[i - 1].label; });
        if (m.empty_domain()) {
          ++ball.empty_domain_words;
          continue;
        }
        if (seen.emplace(m.rules, w).second) {
          ball.maps.push_back({w, m});
          if (ball.maps.size() > budget) {
            ball.truncated = true;
            return ball;
          }
          next.push_back({std::move(w), std::move(m)});
        }
      }
    frontier = std::move(next);
  }
  return ball;
}

// ---- orbit / minimality --------------------------------------------------------------

OrbitResult orbit_cells(const ActionSystem& sys, const Digits& start, int alpha, int depth,
                        std::size_t budget) {
  OrbitResult res;
  std::set<Digits> visited;
  std::set<std::uint64_t> cells;
  std::deque<std::pair<Digits, int>> queue;
  visited.insert(start);
  cells.insert(sys.cell_of(start, depth));
  queue.emplace_back(start, 0);
  const int nu = sys.generators();
  while (!queue.empty()) {
    auto [p, len] = queue.front();
    queue.pop_front();
    if (len == alpha) continue;
    for (int r = 0; r < 2 * nu; ++r) {
      int letter = (r % 2 == 0) ? r / 2 + 1 : -(r / 2 + 1);
      auto q = sys.apply(letter, p);
      if (!q) continue;
      if (!visited.insert(*q).second) continue;
      if (visited.size() > budget) {
        res.budget_hit = true;
        res.cells.assign(cells.begin(), cells.end());
        return res;
      }
      cells.insert(sys.cell_of(*q, depth));
      queue.emplace_back(std::move(*q), len + 1);
    }
  }
  res.cells.assign(cells.begin(), cells.end());
  return res;
}

MinimalityVerdict minimality_check(const ActionSystem& sys, int depth, int alpha,
                                   std::size_t budget) {
  MinimalityVerdict v;
  v.depth = depth;
  v.alpha = alpha;
  std::uint64_t n = sys.cell_count(depth);
  for (std::uint64_t c = 0; c < n; ++c) {
    OrbitResult orb = orbit_cells(sys, sys.representative(c, depth), alpha, depth, budget);
    if (orb.cells.size() < n) {
      std::uint64_t missing = 0;
      for (std::uint64_t m = 0; m < n; ++m)
        if (!std::binary_search(orb.cells.begin(), orb.cells.end(), m)) {
          missing = m;
          break;
        }
      v.minimal = false;
      v.witness_from = c;
      v.witness_missing = missing;
      v.inconclusive = orb.budget_hit;
      v.note = orb.budget_hit ? "orbit budget exhausted; unreached cell may still be reachable"
                              : "cell unreachable within word length budget";
      return v;
    }
  }
  v.minimal = true;
  return v;
}

// ---- separation ----------------------------------------------------------------------

std::optional<std::pair<int, Word>> separation_word(const ActionSystem& sys, const Digits& p,
                                                    const Digits& q, const Rat& eps, int alpha_max,
                                                    std::size_t budget) {
  struct State {
    Digits a, b;
    Word w;
  };
  std::set<std::pair<Digits, Digits>> visited;
  std::deque<State> queue;
  queue.push_back({p, q, {}});
  visited.insert({p, q});
  const int nu = sys.generators();
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (sys.dist(s.a, s.b) >= eps) return std::make_pair(static_cast<int>(s.w.size()), s.w);
    if (static_cast<int>(s.w.size()) == alpha_max) continue;
    for (int r = 0; r < 2 * nu; ++r) {
      int letter = (r % 2 == 0) ? r / 2 + 1 : -(r / 2 + 1);
      if (!s.w.empty() && s.w.back() == -letter) continue;
      auto a = sys.apply(letter, s.a);
      if (!a) continue;
      auto b = sys.apply(letter, s.b);
      if (!b) continue;
      if (!visited.insert({*a, *b}).second) continue;
      if (visited.size() > budget) return std::nullopt;
      Word w = s.w;
      // leftmost letter acts last; BFS applies letters as they are appended
      w.push_back(letter);
      queue.push_back({std::move(*a), std::move(*b), std::move(w)});
    }
  }
  return std::nullopt;
}

ExpansivityReport expansivity_witness(const ActionSystem& sys, const Rat& eps, int alpha_max,
                                      int depth) {
  if (!eps.is_positive()) throw UsageError("epsilon must be positive");
  ExpansivityReport rep;
  rep.epsilon = eps;
  rep.alpha_max = alpha_max;
  rep.depth = depth;
  const std::uint64_t n = sys.cell_count(depth);
  rep.pairs = pair_count(n);
  std::vector<Digits> reps;
  reps.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) reps.push_back(sys.representative(c, depth));

  std::vector<int> first_len;
  pair_table(rep.pairs, [&](std::uint64_t idx) {
    auto [i, j] = pair_at(idx, n);
    auto r = separation_word(sys, reps[i], reps[j], eps, alpha_max);
    return r ? r->first : -1;
  }, first_len);

  for (std::uint64_t idx = 0; idx < rep.pairs; ++idx) {
    auto [i, j] = pair_at(idx, n);
    if (first_len[idx] >= 0) {
      ++rep.separated;
      auto r = separation_word(sys, reps[i], reps[j], eps, alpha_max);
      rep.witnesses.emplace_back(i, j, r->second);
    } else {
      rep.unseparated.emplace_back(i, j);
    }
  }
  return rep;
}

std::vector<EquicontinuityRow> equicontinuity_probe(const ActionSystem& sys, int alpha_max,
                                                    int depth) {
  const std::uint64_t n = sys.cell_count(depth);
  std::map<Rat, EquicontinuityRow, std::greater<Rat>> rows;
  std::vector<Digits> reps;
  for (std::uint64_t c = 0; c < n; ++c) reps.push_back(sys.representative(c, depth));
  std::vector<Word> words = reduced_words(sys.generators(), alpha_max);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j) {
      Rat d0 = sys.dist(reps[i], reps[j]);
      auto& row = rows.try_emplace(d0, EquicontinuityRow{d0, Rat(0), {}}).first->second;
      for (const auto& w : words) {
        auto a = sys.evaluate(w, reps[i]);
        if (!a) continue;
        auto b = sys.evaluate(w, reps[j]);
        if (!b) continue;
        Rat d1 = sys.dist(*a, *b);
        if (d1 > row.max_image) {
          row.max_image = d1;
          row.witness = w;
        }
      }
    }
  std::vector<EquicontinuityRow> out;
  for (auto& [d0, row] : rows) out.push_back(row);
  return out;
}

// ---- audit ---------------------------------------------------------------------------

AuditReport lipschitz_audit(const ActionSystem& sys, int alpha, int depth) {
  AuditReport rep;
  rep.alpha = alpha;
  rep.depth = depth;
  rep.constant = sys.max_gen_lipschitz();
  const std::uint64_t n = sys.cell_count(depth);
  std::vector<Digits> reps;
  reps.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) reps.push_back(sys.representative(c, depth));

  const int sig_levels = depth + alpha + 2;
  std::vector<Digits> rep_sig(n);
  for (std::uint64_t c = 0; c < n; ++c) rep_sig[c] = sys.signature(reps[c], sig_levels);

  // letter words are deduplicated by the graph of the map on the working cells
  // (generator sets often contain formal inverses of each other, and distortion
  // belongs to the map, not its spelling); the shortlex-first word is kept
  struct Pending {
    Word word;
    std::vector<bool> has;
    std::vector<Digits> img;
  };
  std::vector<Pending> todo;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::size_t>> by_digest;
  for (const auto& w : reduced_words(sys.generators(), alpha)) {
    Pending p;
    p.word = w;
    p.has.assign(n, false);
    p.img.resize(n);
    std::uint64_t h1 = 1469598103934665603ull, h2 = 1099511628211ull;
    auto mix = [&](std::uint64_t v) {
      h1 = (h1 ^ v) * 1099511628211ull;
      h2 = (h2 + v) * 0x9e3779b97f4a7c15ull;
    };
    for (std::uint64_t c = 0; c < n; ++c) {
      auto img = sys.evaluate(w, reps[c]);
      if (img) {
        p.has[c] = true;
        mix(1);
        for (auto d : *img) mix(d);
        p.img[c] = std::move(*img);
      } else {
        mix(0);
      }
    }
    auto& bucket = by_digest[{h1, h2}];
    bool dup = false;
    for (std::size_t idx : bucket)
      if (todo[idx].has == p.has && todo[idx].img == p.img) {
        dup = true;
        break;
      }
    if (!dup) {
      bucket.push_back(todo.size());
      todo.push_back(std::move(p));
    }
  }

  for (auto& p : todo) {
    std::vector<Digits> img_sig(n);
    for (std::uint64_t c = 0; c < n; ++c)
      if (p.has[c]) img_sig[c] = sys.signature(p.img[c], sig_levels);
    const auto& has = p.has;
    PairExtremes ext = pair_extremes(pair_count(n), [&](std::uint64_t idx) -> std::optional<Rat> {
      auto [i, j] = pair_at(idx, n);
      if (!has[i] || !has[j]) return std::nullopt;
      Rat din = sys.dist_signatures(rep_sig[i], rep_sig[j]);
      if (din.is_zero()) return std::nullopt;
      return sys.dist_signatures(img_sig[i], img_sig[j]) / din;
    });
    AuditRow row;
    row.word = p.word;
    row.pairs = ext.defined;
    Rat bound(1);
    for (std::size_t k = 0; k < p.word.size(); ++k) bound = bound * rep.constant;
    row.bound = bound;
    if (ext.any) {
      row.min_ratio = ext.min;
      row.max_ratio = ext.max;
      row.ok = ext.max <= bound && Rat(1) <= ext.min * bound;
    } else {
      row.min_ratio = row.max_ratio = Rat(1);
      row.ok = true;
    }
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

} // namespace mbx
