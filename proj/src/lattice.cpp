#include "mbx/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mbx {

namespace {

std::int64_t narrow(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw ResourceLimit(std::string("lattice arithmetic overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

} // namespace

Lattice Lattice::scaled_identity(int n, std::int64_t c) {
  Lattice L;
  L.n = n;
  L.a.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) L.at(i, i) = c;
  return L;
}

Lattice Lattice::from_columns(int n, const std::vector<std::vector<std::int64_t>>& cols) {
  if (static_cast<int>(cols.size()) != n) throw UsageError("need n generating columns");
  Lattice L;
  L.n = n;
  L.a.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(cols[j].size()) != n) throw UsageError("column length mismatch");
    for (int i = 0; i < n; ++i) L.at(i, j) = cols[j][i];
  }
  return L;
}

__int128 lattice_det(const Lattice& L) {
  // fraction-free Gaussian elimination (Bareiss) in __int128
  const int n = L.n;
  std::vector<__int128> m(L.a.begin(), L.a.end());
  auto at = [&](int i, int j) -> __int128& { return m[static_cast<std::size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Lattice hnf(const Lattice& L) {
  const int n = L.n;
  Lattice H = L;
  // column reduction to lower triangular with positive diagonal
  for (int i = 0; i < n; ++i) {
    // gcd out entries in row i across columns i..n-1
    for (int j = i + 1; j < n; ++j) {
      while (H.at(i, j) != 0) {
        if (H.at(i, i) == 0) {
          for (int r = 0; r < n; ++r) std::swap(H.at(r, i), H.at(r, j));
          continue;
        }
        std::int64_t q = H.at(i, j) / H.at(i, i);
        for (int r = 0; r < n; ++r)
          H.at(r, j) = narrow(static_cast<__int128>(H.at(r, j)) -
                                  static_cast<__int128>(q) * H.at(r, i),
                              "hnf");
        if (H.at(i, j) != 0) {
          for (int r = 0; r < n; ++r) std::swap(H.at(r, i), H.at(r, j));
        }
      }
    }
    if (H.at(i, i) == 0) throw UsageError("singular lattice matrix");
    if (H.at(i, i) < 0)
      for (int r = 0; r < n; ++r) H.at(r, i) = -H.at(r, i);
    // reduce earlier columns above the diagonal
    for (int j = 0; j < i; ++j) {
      std::int64_t q = H.at(i, j) / H.at(i, i);
      if (H.at(i, j) % H.at(i, i) < 0) q -= 1; // floor
      if (q == 0) continue;
      for (int r = 0; r < n; ++r)
        H.at(r, j) = narrow(static_cast<__int128>(H.at(r, j)) -
                                static_cast<__int128>(q) * H.at(r, i),
                            "hnf");
    }
  }
  return H;
}

bool subgroup_contains(const Lattice& A, const Lattice& B) {
  if (A.n != B.n) throw UsageError("rank mismatch");
  const int n = A.n;
  Lattice H = hnf(A); // lower triangular
  for (int col = 0; col < n; ++col) {
    std::vector<__int128> b(n);
    for (int i = 0; i < n; ++i) b[i] = B.at(i, col);
    for (int i = 0; i < n; ++i) {
      if (b[i] % H.at(i, i) != 0) return false;
      __int128 x = b[i] / H.at(i, i);
      for (int r = i; r < n; ++r) b[r] -= x * H.at(r, i);
    }
    for (int i = 0; i < n; ++i)
      if (b[i] != 0) return false;
  }
  return true;
}

ChainReport chain_validate(const SubgroupChainZn& c) {
  ChainReport rep;
  if (c.n < 1 || c.chain.empty()) {
    rep.message = "empty chain";
    return rep;
  }
  __int128 prev_index = 1;
  for (std::size_t l = 0; l < c.chain.size(); ++l) {
    if (c.chain[l].n != c.n) {
      rep.message = "rank mismatch at level " + std::to_string(l + 1);
      return rep;
    }
    __int128 det = lattice_det(c.chain[l]);
    if (det == 0) {
      rep.message = "singular matrix at level " + std::to_string(l + 1);
      return rep;
    }
    __int128 idx = det < 0 ? -det : det;
    if (!(idx > prev_index)) {
      rep.message = "index not strictly increasing at level " + std::to_string(l + 1);
      return rep;
    }
    if (l > 0 && !subgroup_contains(c.chain[l - 1], c.chain[l])) {
      rep.message = "level " + std::to_string(l + 1) + " is not inside level " + std::to_string(l);
      return rep;
    }
    prev_index = idx;
    __int128 v = idx;
    std::string s;
    while (v) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    rep.indices.push_back(s.empty() ? "1" : s);
  }
  rep.valid = true;
  rep.message = "descending chain with strictly increasing indices";
  return rep;
}

ChainTowerVerdict tower_equivalent_chain(const SubgroupChainZn& P, const SubgroupChainZn& Q,
                                         std::int64_t horizon) {
  if (P.n != Q.n) throw UsageError("rank mismatch between chains");
  ChainTowerVerdict v;
  v.horizon = horizon;
  std::int64_t hp = std::min<std::int64_t>(horizon, P.chain.size());
  std::int64_t hq = std::min<std::int64_t>(horizon, Q.chain.size());

  bool obstruction = false, boundary = false;
  std::string stuck;
  // returns the length of the found prefix of the indexing function; a missing
  // inclusion is a horizon boundary when the needed index divisibility could
  // still appear in deeper (untested) levels, judged by the prime support of
  // the deepest tested index
  auto fill = [&](const std::vector<Lattice>& A, const std::vector<Lattice>& B, std::int64_t ha,
                  std::int64_t hb, std::vector<std::int64_t>& out) -> std::int64_t {
    auto prime_support = [](__int128 d) {
      if (d < 0) d = -d;
      std::set<std::int64_t> s;
      for (std::int64_t p = 2; static_cast<__int128>(p) * p <= d; ++p)
        while (d % p == 0) {
          s.insert(p);
          d /= p;
        }
      if (d > 1) s.insert(static_cast<std::int64_t>(d));
      return s;
    };
    std::set<std::int64_t> deep_support = prime_support(lattice_det(B[hb - 1]));
    for (std::int64_t ell = 1; ell <= ha; ++ell) {
      std::int64_t found = 0;
      for (std::int64_t nu = 1; nu <= hb; ++nu)
        if (subgroup_contains(A[ell - 1], B[nu - 1])) {
          found = nu;
          break;
        }
      if (found) {
        out.push_back(found);
        continue;
      }
      std::set<std::int64_t> need = prime_support(lattice_det(A[ell - 1]));
      bool plausible_deeper =
          std::includes(deep_support.begin(), deep_support.end(), need.begin(), need.end());
      if (plausible_deeper) {
        boundary = true;
        if (stuck.empty())
          stuck = "inclusion for level " + std::to_string(ell) +
                  " lies beyond the tested chain (horizon boundary)";
        return ell - 1; // certified prefix ends here
      }
      obstruction = true;
      if (stuck.empty())
        stuck = "a prime of the level-" + std::to_string(ell) +
                " index never divides the other chain's tested indices";
      out.push_back(-1);
      return ell - 1;
    }
    return ha;
  };
  std::int64_t k1 = fill(P.chain, Q.chain, hp, hq, v.indexing.nu_of_ell);
  std::int64_t k2 = fill(Q.chain, P.chain, hq, hp, v.indexing.ell_of_nu);

  if (obstruction) {
    v.kind = TowerVerdict::Kind::NotEquivalent;
    v.reason = stuck + " (index obstruction at the tested horizon)";
  } else if (k1 >= 1 && k2 >= 1 && (!boundary || (k1 + k2 >= (hp + hq) / 2))) {
    v.kind = TowerVerdict::Kind::Equivalent;
    v.reason = boundary ? "interleaving found up to the horizon boundary"
                        : "interleaving found on the tested range";
    IndexingFunctions trimmed;
    trimmed.nu_of_ell.assign(v.indexing.nu_of_ell.begin(), v.indexing.nu_of_ell.begin() + k1);
    trimmed.ell_of_nu.assign(v.indexing.ell_of_nu.begin(), v.indexing.ell_of_nu.begin() + k2);
    v.disp = displacement_from_indexing(trimmed);
  } else {
    v.kind = TowerVerdict::Kind::Inconclusive;
    v.reason = stuck.empty() ? "tested prefixes too short" : stuck;
  }
  return v;
}

} // namespace mbx
