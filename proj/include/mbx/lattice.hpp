#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbx/solenoid.hpp"

namespace mbx {

// Full-rank sublattice of Z^n, columns of an integer matrix.
struct Lattice {
  int n = 0;
  std::vector<std::int64_t> a; // row-major n*n

  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static Lattice scaled_identity(int n, std::int64_t c);
  static Lattice from_columns(int n, const std::vector<std::vector<std::int64_t>>& cols);
};

__int128 lattice_det(const Lattice& L); // exact, throws on singular overflow

// column-style Hermite normal form (lower triangular, positive diagonal)
Lattice hnf(const Lattice& L);

// is every column of B an integer combination of columns of A?
bool subgroup_contains(const Lattice& A, const Lattice& B);

struct SubgroupChainZn {
  int n = 0;
  std::vector<Lattice> chain; // H_1, H_2, ... strictly descending below Z^n
};

struct ChainReport {
  bool valid = false;
  std::string message;
  std::vector<std::string> indices; // |det| per level
};
ChainReport chain_validate(const SubgroupChainZn& c);

struct ChainTowerVerdict {
  TowerVerdict::Kind kind = TowerVerdict::Kind::Inconclusive;
  std::string reason;
  std::int64_t horizon = 0;
  IndexingFunctions indexing;
  DisplacementResult disp; // filled when equivalent on the tested range
};

ChainTowerVerdict tower_equivalent_chain(const SubgroupChainZn& P, const SubgroupChainZn& Q,
                                         std::int64_t horizon);

} // namespace mbx
