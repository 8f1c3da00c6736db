#include "mbx/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "mbx/kernels.hpp"

namespace mbx {

namespace {

// adjacency as bitsets over vertex indices
struct BitGraph {
  std::uint64_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;
  bool get(std::uint64_t i, std::uint64_t j) const {
    return (bits[i * words + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::uint64_t i, std::uint64_t j) {
    bits[i * words + j / 64] |= 1ull << (j % 64);
    bits[j * words + i / 64] |= 1ull << (i % 64);
  }
};

// branch-and-bound maximum clique with greedy colouring bound; deterministic
struct CliqueSolver {
  const BitGraph& g;
  std::vector<std::uint64_t> best;
  std::uint64_t nodes = 0, node_budget;
  bool budget_hit = false;

  CliqueSolver(const BitGraph& graph, std::uint64_t budget) : g(graph), node_budget(budget) {}

  void expand(std::vector<std::uint64_t>& cur, std::vector<std::uint64_t> cand) {
    if (budget_hit) return;
    if (++nodes > node_budget) {
      budget_hit = true;
      return;
    }
    if (cand.empty()) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    // greedy colouring on cand in index order; colour count bounds the clique
    std::vector<int> colour(cand.size(), -1);
    int colours = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::vector<char> used(colours, 0);
      for (std::size_t j = 0; j < i; ++j)
        if (g.get(cand[i], cand[j]) && colour[j] >= 0) used[colour[j]] = 1;
      int c = 0;
      while (c < colours && used[c]) ++c;
      if (c == colours) ++colours;
      colour[i] = c;
    }
    // branch from the highest colour downwards
    std::vector<std::size_t> order(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return colour[a] > colour[b]; });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
      std::size_t i = order[oi];
      if (cur.size() + colour[i] + 1 <= best.size()) return; // bound
      cur.push_back(cand[i]);
      std::vector<std::uint64_t> next;
      for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
        std::uint64_t v = cand[order[oj]];
        if (g.get(cand[i], v)) next.push_back(v);
      }
      std::sort(next.begin(), next.end());
      expand(cur, std::move(next));
      cur.pop_back();
      if (budget_hit) return;
    }
  }
};

std::vector<std::uint64_t> greedy_separated(const BitGraph& g) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < g.n; ++v) {
    bool ok = true;
    for (auto u : out)
      if (!g.get(u, v)) { ok = false; break; }
    if (ok) out.push_back(v);
  }
  return out;
}

// least separating word length per pair (-1 = none within alpha_max)
std::vector<int> separation_lengths(const ActionSystem& sys, const Rat& eps, int alpha_max,
                                    int depth) {
  const std::uint64_t n = sys.cell_count(depth);
  std::vector<Digits> reps;
  reps.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) reps.push_back(sys.representative(c, depth));
  std::vector<int> sep;
  pair_table(pair_count(n), [&](std::uint64_t idx) {
    auto [i, j] = pair_at(idx, n);
    auto r = separation_word(sys, reps[i], reps[j], eps, alpha_max);
    return r ? r->first : -1;
  }, sep);
  return sep;
}

BitGraph graph_at(const std::vector<int>& sep, std::uint64_t n, int ell) {
  BitGraph g;
  g.n = n;
  g.words = (n + 63) / 64;
  g.bits.assign(g.words * n, 0);
  for (std::uint64_t idx = 0; idx < sep.size(); ++idx)
    if (sep[idx] >= 0 && sep[idx] <= ell) {
      auto [i, j] = pair_at(idx, n);
      g.set(i, j);
    }
  return g;
}

BitGraph separation_graph(const ActionSystem& sys, const Rat& eps, int ell, int depth) {
  return graph_at(separation_lengths(sys, eps, ell, depth), sys.cell_count(depth), ell);
}

SeparatedResult clique_on(const BitGraph& g, bool exact, std::uint64_t node_budget) {
  SeparatedResult res;
  if (exact) {
    CliqueSolver solver(g, node_budget);
    std::vector<std::uint64_t> cur, cand(g.n);
    for (std::uint64_t v = 0; v < g.n; ++v) cand[v] = v;
    solver.best = greedy_separated(g); // warm start
    solver.expand(cur, std::move(cand));
    if (!solver.budget_hit) {
      res.witness = solver.best;
      res.count = solver.best.size();
      res.exact = true;
      return res;
    }
    res.fallback = true;
  }
  res.witness = greedy_separated(g);
  res.count = res.witness.size();
  res.exact = false;
  return res;
}

} // namespace

SeparatedResult max_separated(const SeparationInstance& inst) {
  if (!inst.sys) throw UsageError("missing system");
  if (!inst.epsilon.is_positive()) throw UsageError("epsilon must be positive");
  if (inst.ell < 0) throw UsageError("word budget must be >= 0");
  const std::uint64_t n = inst.sys->cell_count(inst.depth);
  if (inst.exact && n > inst.cell_budget)
    throw ResourceLimit("exact separation needs " + std::to_string(n) + " cells, budget " +
                        std::to_string(inst.cell_budget));
  BitGraph g = separation_graph(*inst.sys, inst.epsilon, inst.ell, inst.depth);
  return clique_on(g, inst.exact, inst.node_budget);
}

std::vector<std::uint64_t> max_clique_exact(
    std::uint64_t n, const std::function<bool(std::uint64_t, std::uint64_t)>& adjacent,
    std::uint64_t node_budget) {
  BitGraph g;
  g.n = n;
  g.words = (n + 63) / 64;
  g.bits.assign(g.words * n, 0);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j)
      if (adjacent(i, j)) g.set(i, j);
  SeparatedResult r = clique_on(g, true, node_budget);
  if (!r.exact) throw ResourceLimit("clique node budget exhausted");
  return r.witness;
}

std::pair<double, std::vector<double>> least_squares(const std::vector<double>& x,
                                                     const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  double slope = sxy / sxx;
  double icept = my - slope * mx;
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = y[i] - (slope * x[i] + icept);
  return {slope, res};
}

GrowthSeries expansion_growth(const ActionSystem& sys, const Rat& eps, int ell_lo, int ell_hi,
                              int depth, bool exact) {
  if (ell_hi < ell_lo) throw UsageError("empty word-length range");
  GrowthSeries s;
  s.epsilon = eps;
  s.depth = depth;
  // one pair sweep records the least separating length; budgets threshold it
  const std::uint64_t n = sys.cell_count(depth);
  std::vector<int> lens = separation_lengths(sys, eps, ell_hi, depth);
  std::uint64_t prev = 0;
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    SeparatedResult r = clique_on(graph_at(lens, n, ell), exact, 2000000);
    if (r.count < prev && r.exact)
      throw std::logic_error("separated counts must be nondecreasing in the word budget");
    prev = r.count;
    GrowthEntry e;
    e.ell = ell;
    e.count = std::to_string(r.count);
    e.ln_count = std::log(static_cast<double>(r.count));
    e.exact = r.exact;
    s.entries.push_back(std::move(e));
  }
  // slope over the upper half of the range: tail behaviour, early transients excluded
  std::size_t m = s.entries.size();
  std::size_t from = m / 2;
  if (m - from >= 2) {
    std::vector<double> x, y;
    for (std::size_t i = from; i < m; ++i) {
      x.push_back(s.entries[i].ell);
      y.push_back(s.entries[i].ln_count);
    }
    auto [slope, res] = least_squares(x, y);
    s.slope = slope;
    for (double r : res) s.max_residual = std::max(s.max_residual, std::abs(r));
    s.slope_defined = true;
  }
  return s;
}

EntropyProfile entropy_profile(const ActionSystem& sys, const std::vector<Rat>& eps_list,
                               int ell_lo, int ell_hi, int depth, bool exact) {
  if (eps_list.empty()) throw UsageError("empty epsilon list");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw UsageError("epsilon list must be strictly decreasing");
  EntropyProfile p;
  for (const auto& eps : eps_list)
    p.series.push_back(expansion_growth(sys, eps, ell_lo, ell_hi, depth, exact));
  // counts are nonincreasing in epsilon, pointwise in the budget
  for (std::size_t i = 1; i < p.series.size(); ++i)
    for (std::size_t e = 0; e < p.series[i].entries.size(); ++e) {
      const auto& fine = p.series[i].entries[e];
      const auto& coarse = p.series[i - 1].entries[e];
      if (fine.exact && coarse.exact &&
          std::stoull(fine.count) < std::stoull(coarse.count))
        throw std::logic_error("separated counts increased with epsilon");
    }
  p.slopes_nondecreasing = true;
  for (std::size_t i = 1; i < p.series.size(); ++i)
    if (p.series[i].slope < p.series[i - 1].slope - 1e-12) p.slopes_nondecreasing = false;
  return p;
}

} // namespace mbx
