#include "mbx/solenoid.hpp"

#include <algorithm>

namespace mbx {

DegreeSeq DegreeSeq::explicit_prefix(std::vector<std::int64_t> p) {
  DegreeSeq s;
  s.prefix = std::move(p);
  for (auto m : s.prefix)
    if (m < 2) throw UsageError("covering degrees must be >= 2");
  if (s.prefix.empty()) throw UsageError("empty degree sequence");
  return s;
}

DegreeSeq DegreeSeq::periodic(std::vector<std::int64_t> pre, std::vector<std::int64_t> per) {
  if (per.empty()) throw UsageError("periodic rule needs a nonempty period");
  DegreeSeq s;
  s.rule = Rule::Periodic;
  s.prefix = std::move(pre);
  s.period = std::move(per);
  for (auto m : s.prefix)
    if (m < 2) throw UsageError("covering degrees must be >= 2");
  for (auto m : s.period)
    if (m < 2) throw UsageError("covering degrees must be >= 2");
  return s;
}

DegreeSeq DegreeSeq::gap2exp() {
  DegreeSeq s;
  s.rule = Rule::Gap2Exp;
  return s;
}

std::int64_t DegreeSeq::degree(std::int64_t ell) const {
  if (ell < 1) throw UsageError("level index must be >= 1");
  switch (rule) {
    case Rule::None:
      if (ell > static_cast<std::int64_t>(prefix.size()))
        throw UsageError("degree beyond explicit prefix");
      return prefix[ell - 1];
    case Rule::Periodic: {
      if (ell <= static_cast<std::int64_t>(prefix.size())) return prefix[ell - 1];
      std::int64_t i = (ell - 1 - prefix.size()) % period.size();
      return period[i];
    }
    case Rule::Gap2Exp: {
      // position 1 is a 2; block t >= 1 is one 3 followed by 2^t twos
      if (ell == 1) return 2;
      std::int64_t pos = 2;
      for (std::int64_t t = 1; t < 63; ++t) {
        if (ell == pos) return 3;
        std::int64_t twos = std::int64_t(1) << t;
        if (ell < pos + 1 + twos) return 2;
        pos += 1 + twos;
      }
      throw UsageError("gap rule index too large");
    }
  }
  throw UsageError("bad rule");
}

std::int64_t DegreeSeq::known_length() const {
  return rule == Rule::None ? static_cast<std::int64_t>(prefix.size()) : INT64_MAX;
}

std::vector<std::int64_t> factor_degree(std::int64_t m) {
  if (m < 2) throw UsageError("cannot factor degree < 2");
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      out.push_back(p);
      m /= p;
    }
  if (m > 1) out.push_back(m);
  return out;
}

namespace {

void add_factors(ExpMap& e, std::int64_t m, std::int64_t times = 1) {
  for (auto p : factor_degree(m)) e[p] += times;
}

ExpMap gap2exp_exponents(std::int64_t len) {
  // count 2s and 3s among the first `len` entries of the gap sequence
  ExpMap e;
  if (len <= 0) return e;
  std::int64_t twos = 1 <= len ? 1 : 0, threes = 0;
  std::int64_t pos = 2;
  for (std::int64_t t = 1; t < 63 && pos <= len; ++t) {
    ++threes; // the 3 at `pos`
    std::int64_t block = std::int64_t(1) << t;
    std::int64_t have = std::min(block, len - pos);
    twos += std::max<std::int64_t>(0, have);
    pos += 1 + block;
  }
  if (twos) e[2] = twos;
  if (threes) e[3] = threes;
  return e;
}

} // namespace

ExpMap prefix_exponents(const DegreeSeq& s, std::int64_t len) {
  if (len < 0) throw UsageError("negative prefix length");
  ExpMap e;
  switch (s.rule) {
    case DegreeSeq::Rule::None: {
      if (len > static_cast<std::int64_t>(s.prefix.size()))
        throw UsageError("exponent count beyond explicit prefix");
      for (std::int64_t i = 0; i < len; ++i) add_factors(e, s.prefix[i]);
      return e;
    }
    case DegreeSeq::Rule::Periodic: {
      std::int64_t p = static_cast<std::int64_t>(s.prefix.size());
      std::int64_t head = std::min(len, p);
      for (std::int64_t i = 0; i < head; ++i) add_factors(e, s.prefix[i]);
      if (len <= p) return e;
      std::int64_t rest = len - p;
      std::int64_t T = static_cast<std::int64_t>(s.period.size());
      std::int64_t full = rest / T, rem = rest % T;
      if (full)
        for (auto m : s.period) add_factors(e, m, full);
      for (std::int64_t i = 0; i < rem; ++i) add_factors(e, s.period[i]);
      return e;
    }
    case DegreeSeq::Rule::Gap2Exp:
      return gap2exp_exponents(len);
  }
  throw UsageError("bad rule");
}

std::set<std::int64_t> support_primes(const DegreeSeq& s) {
  std::set<std::int64_t> out;
  for (auto m : s.prefix)
    for (auto p : factor_degree(m)) out.insert(p);
  for (auto m : s.period)
    for (auto p : factor_degree(m)) out.insert(p);
  if (s.rule == DegreeSeq::Rule::Gap2Exp) {
    out.insert(2);
    out.insert(3);
  }
  return out;
}

std::optional<std::int64_t> total_multiplicity(const DegreeSeq& s, std::int64_t p) {
  switch (s.rule) {
    case DegreeSeq::Rule::None:
      throw UsageError("total multiplicity needs a rule certificate");
    case DegreeSeq::Rule::Periodic: {
      for (auto m : s.period)
        for (auto q : factor_degree(m))
          if (q == p) return std::nullopt; // infinitely often
      std::int64_t c = 0;
      for (auto m : s.prefix)
        for (auto q : factor_degree(m))
          if (q == p) ++c;
      return c;
    }
    case DegreeSeq::Rule::Gap2Exp:
      if (p == 2 || p == 3) return std::nullopt;
      return 0;
  }
  throw UsageError("bad rule");
}

DominationSearch min_prefix_dominating(const DegreeSeq& s, const ExpMap& target) {
  DominationSearch r;
  bool empty_target = true;
  for (const auto& [p, c] : target)
    if (c > 0) empty_target = false;
  if (empty_target) {
    r.kind = DominationSearch::Kind::Found;
    r.length = 0;
    return r;
  }
  auto dominates = [&](std::int64_t len) {
    ExpMap have = prefix_exponents(s, len);
    for (const auto& [p, c] : target) {
      auto it = have.find(p);
      if (c > 0 && (it == have.end() || it->second < c)) return false;
    }
    return true;
  };
  if (s.certified()) {
    for (const auto& [p, c] : target) {
      if (c == 0) continue;
      auto total = total_multiplicity(s, p);
      if (total && *total < c) {
        r.kind = DominationSearch::Kind::Never;
        return r;
      }
    }
    std::int64_t hi = 1;
    while (!dominates(hi)) {
      if (hi > (std::int64_t(1) << 56)) throw ResourceLimit("domination search exploded");
      hi *= 2;
    }
    std::int64_t lo = hi / 2; // dominates(hi), not dominates(lo) unless hi == 1
    if (hi == 1) {
      r.kind = DominationSearch::Kind::Found;
      r.length = 1;
      return r;
    }
    while (lo + 1 < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      (dominates(mid) ? hi : lo) = mid;
    }
    r.kind = DominationSearch::Kind::Found;
    r.length = hi;
    return r;
  }
  for (std::int64_t len = 1; len <= s.known_length(); ++len)
    if (dominates(len)) {
      r.kind = DominationSearch::Kind::Found;
      r.length = len;
      return r;
    }
  r.kind = DominationSearch::Kind::Unknown;
  return r;
}

PrimeMultiset prime_multiset(const DegreeSeq& s, std::int64_t horizon) {
  if (horizon < 1) throw UsageError("horizon must be >= 1");
  if (!s.certified()) horizon = std::min(horizon, s.known_length());
  PrimeMultiset out;
  for (std::int64_t ell = 1; ell <= horizon; ++ell)
    for (auto p : factor_degree(s.degree(ell))) out.entries.push_back(p);
  switch (s.rule) {
    case DegreeSeq::Rule::None:
      break;
    case DegreeSeq::Rule::Periodic: {
      std::string per;
      for (auto m : s.period) per += (per.empty() ? "" : ",") + std::to_string(m);
      out.certificate = "periodic degrees (" + per + "): their primes occur infinitely often";
      break;
    }
    case DegreeSeq::Rule::Gap2Exp:
      out.certificate = "gap rule: 2 and 3 occur infinitely often, 2 with density one";
      break;
  }
  return out;
}

TowerVerdict tower_equivalent_1d(const DegreeSeq& P, const DegreeSeq& Q, std::int64_t horizon) {
  if (horizon < 1) throw UsageError("horizon must be >= 1");
  TowerVerdict v;
  v.horizon = horizon;

  if (P.certified() && Q.certified()) {
    // exact: the prime multisets are in bijective correspondence iff every prime
    // has the same (possibly infinite) total multiplicity on both sides
    std::set<std::int64_t> primes = support_primes(P);
    for (auto p : support_primes(Q)) primes.insert(p);
    for (auto p : primes) {
      auto cp = total_multiplicity(P, p), cq = total_multiplicity(Q, p);
      bool eq = (!cp && !cq) || (cp && cq && *cp == *cq);
      if (!eq) {
        v.kind = TowerVerdict::Kind::NotEquivalent;
        v.exact = true;
        auto str = [](const std::optional<std::int64_t>& c) {
          return c ? std::to_string(*c) : std::string("inf");
        };
        v.reason = "prime " + std::to_string(p) + " has multiplicity " + str(cp) + " vs " + str(cq);
        return v;
      }
    }
    v.kind = TowerVerdict::Kind::Equivalent;
    v.exact = true;
    v.reason = "prime multisets in bijective correspondence (rule-certified)";
  }

  // minimal indexing functions on the tested range
  bool all_found = true;
  std::string stuck;
  auto fill = [&](const DegreeSeq& A, const DegreeSeq& B, std::vector<std::int64_t>& out) {
    for (std::int64_t ell = 1; ell <= horizon; ++ell) {
      if (!A.certified() && ell > A.known_length()) {
        all_found = false;
        if (stuck.empty()) stuck = "explicit prefix exhausted at level " + std::to_string(ell);
        out.push_back(0);
        continue;
      }
      DominationSearch r = min_prefix_dominating(B, prefix_exponents(A, ell));
      if (r.kind == DominationSearch::Kind::Found) {
        out.push_back(r.length);
      } else if (r.kind == DominationSearch::Kind::Never) {
        all_found = false;
        if (stuck.empty())
          stuck = "no level of the other tower ever divides level " + std::to_string(ell);
        out.push_back(-1);
      } else {
        all_found = false;
        if (stuck.empty())
          stuck = "divisibility search exhausted the explicit prefix (no certificate)";
        out.push_back(0);
      }
    }
  };
  fill(P, Q, v.indexing.nu_of_ell);
  fill(Q, P, v.indexing.ell_of_nu);

  if (v.exact) return v; // verdict already decided by certificates

  if (all_found) {
    v.kind = TowerVerdict::Kind::Equivalent;
    v.reason = "interleaving found on the whole tested range (horizon evidence)";
  } else {
    bool never = false;
    for (auto x : v.indexing.nu_of_ell) never = never || x == -1;
    for (auto x : v.indexing.ell_of_nu) never = never || x == -1;
    if (never) {
      // a Never answer only arises against a rule-certified tower, and the needed
      // inclusion keeps failing at every deeper level, so this is a proof
      v.kind = TowerVerdict::Kind::NotEquivalent;
      v.exact = true;
      v.reason = stuck;
    } else {
      v.kind = TowerVerdict::Kind::Inconclusive;
      v.reason = stuck;
    }
  }
  return v;
}

DisplacementResult displacement_from_indexing(const IndexingFunctions& ix) {
  DisplacementResult r;
  std::size_t n = std::min(ix.nu_of_ell.size(), ix.ell_of_nu.size());
  r.horizon = static_cast<std::int64_t>(n);
  std::int64_t sup = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t ell = static_cast<std::int64_t>(i) + 1;
    if (ix.nu_of_ell[i] <= 0 || ix.ell_of_nu[i] <= 0) {
      r.kind = DisplacementResult::Kind::Inconclusive;
      r.note = "indexing functions incomplete on the tested range";
      return r;
    }
    std::int64_t da = ix.nu_of_ell[i] - ell, db = ix.ell_of_nu[i] - ell;
    if (da < 0) da = -da;
    if (db < 0) db = -db;
    sup = std::max({sup, da, db});
    r.running_sup.push_back(sup);
  }
  if (n < 6) {
    r.kind = DisplacementResult::Kind::Inconclusive;
    r.note = "horizon too small to classify the trend";
    return r;
  }
  // stabilization: no growth over the final third
  std::size_t third = n - n / 3;
  if (r.running_sup[third - 1] == r.running_sup[n - 1]) {
    r.kind = DisplacementResult::Kind::Finite;
    r.value = r.running_sup[n - 1];
    return r;
  }
  // unbounded trend: sup strictly increases across three windows of the final 2/3
  std::size_t start = n / 3;
  std::size_t w = (n - start) / 3;
  std::int64_t m0 = r.running_sup[start + w - 1];
  std::int64_t m1 = r.running_sup[start + 2 * w - 1];
  std::int64_t m2 = r.running_sup[n - 1];
  if (m0 < m1 && m1 < m2) {
    r.kind = DisplacementResult::Kind::UnboundedTrend;
    r.value = r.running_sup[n - 1];
    return r;
  }
  r.kind = DisplacementResult::Kind::Inconclusive;
  r.value = r.running_sup[n - 1];
  r.note = "running sup neither stabilized nor monotone across trend windows";
  return r;
}

DisplacementResult displacement(const DegreeSeq& P, const DegreeSeq& Q, std::int64_t horizon) {
  TowerVerdict tv = tower_equivalent_1d(P, Q, horizon);
  if (tv.kind != TowerVerdict::Kind::Equivalent)
    throw UsageError("displacement requires a positive tower-equivalence verdict");
  DisplacementResult r = displacement_from_indexing(tv.indexing);
  if (P.certified() && Q.certified() && r.kind != DisplacementResult::Kind::Inconclusive) {
    // probe modestly deeper horizons (indexing values can grow exponentially in
    // the level index, so multiplicative probes are out of reach)
    auto sup_at = [&](std::int64_t h) {
      TowerVerdict t = tower_equivalent_1d(P, Q, h);
      DisplacementResult d = displacement_from_indexing(t.indexing);
      return d.running_sup.empty() ? 0 : d.running_sup.back();
    };
    std::int64_t s1 = r.running_sup.back(), s2 = sup_at(horizon + 8), s3 = sup_at(horizon + 16);
    if (r.kind == DisplacementResult::Kind::UnboundedTrend && s1 < s2 && s2 < s3) {
      r.exact = true;
      r.note = "certified rules; sup still growing 8 and 16 levels past the horizon";
    } else if (r.kind == DisplacementResult::Kind::Finite && s1 == s2 && s2 == s3) {
      r.exact = true;
      r.note = "certified rules; sup unchanged 8 and 16 levels past the horizon";
    }
  }
  return r;
}

LipschitzVerdict bounded_tower_equivalent(const DegreeSeq& P, const DegreeSeq& Q,
                                          std::int64_t horizon) {
  LipschitzVerdict v;
  v.tower = tower_equivalent_1d(P, Q, horizon);
  if (v.tower.kind == TowerVerdict::Kind::NotEquivalent) {
    v.kind = LipschitzVerdict::Kind::NotLipschitzEquivalent;
    return v;
  }
  if (v.tower.kind == TowerVerdict::Kind::Inconclusive) {
    v.kind = LipschitzVerdict::Kind::Inconclusive;
    return v;
  }
  v.disp = displacement(P, Q, horizon);
  switch (v.disp.kind) {
    case DisplacementResult::Kind::Finite:
      v.kind = LipschitzVerdict::Kind::LipschitzEquivalent;
      break;
    case DisplacementResult::Kind::UnboundedTrend:
      v.kind = LipschitzVerdict::Kind::NotLipschitzEquivalent;
      break;
    case DisplacementResult::Kind::Inconclusive:
      v.kind = LipschitzVerdict::Kind::Inconclusive;
      break;
  }
  return v;
}

Fiber fiber(const DegreeSeq& s, int depth, std::int64_t metric_base) {
  if (depth < 1) throw UsageError("depth must be >= 1");
  std::vector<std::uint32_t> sizes;
  for (int l = 1; l <= depth; ++l) {
    std::int64_t m = s.degree(l);
    if (m > INT32_MAX) throw UsageError("degree too large for a level alphabet");
    sizes.push_back(static_cast<std::uint32_t>(m));
  }
  std::vector<std::uint32_t> period;
  if (s.rule == DegreeSeq::Rule::Periodic)
    for (auto m : s.period) period.push_back(static_cast<std::uint32_t>(m));
  Fiber f;
  f.space = make_product_space(std::move(sizes), true, std::move(period));
  f.metric = WeightedMetric::power(metric_base);
  return f;
}

} // namespace mbx
