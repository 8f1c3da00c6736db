#pragma once

#include <map>
#include <mutex>

#include "mbx/engine.hpp"

namespace mbx {

// Gluing data for two Cantor actions: clopen sets V1, V2 given as cell lists at
// fixed depths, identified by a bijective pairing (the gluing table).  The glued
// space is piece 1 plus the complement of V2 in piece 2; identified points reside
// in piece-1 coordinates.
struct FusionSpec {
  ActionSystemPtr g1, g2;
  int d1 = 0, d2 = 0; // identification depths
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairing; // (cell of V1, cell of V2)
  bool group_action_1 = false; // extend piece-1 generators by the identity elsewhere
  bool group_action_2 = false;
  // exact suffix transport through the identification; when false, transport
  // projects onto cell representatives and verdicts are certified at the
  // identification depth only
  bool suffix_transport = false;
};

class FusedSystem;
using FusedSystemPtr = std::shared_ptr<const FusedSystem>;

class FusedSystem final : public ActionSystem {
public:
  explicit FusedSystem(FusionSpec spec);

  int generators() const override;
  std::string gen_label(int i) const override;
  Rat gen_lipschitz(int i) const override;
  int min_depth() const override;
  int max_depth() const override;
  std::uint64_t cell_count(int depth) const override;
  Digits representative(std::uint64_t cell, int depth) const override;
  std::uint64_t cell_of(const Digits& point, int depth) const override;
  std::optional<Digits> apply(int letter, const Digits& point) const override;
  Rat dist(const Digits& a, const Digits& b) const override;
  Rat diameter() const override;

  const FusionSpec& spec() const { return spec_; }
  int piece1_generators() const;
  // orbit restriction helpers for tests: tag points by piece
  static int piece_of(const Digits& point) { return static_cast<int>(point.at(0)); }
  Digits lift_piece1(const Digits& inner) const; // wrap a piece-1 point
  Digits lift_piece2(const Digits& inner) const;

private:
  FusionSpec spec_;
  std::vector<std::uint64_t> v2_cells_sorted_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pair_by_v1_, pair_by_v2_;
  mutable std::mutex cache_mu_;
  mutable std::map<int, std::vector<std::uint64_t>> p2_cache_;

  int piece2_depth(int depth) const;
  const std::vector<std::uint64_t>& p2_cells(int depth) const;
  bool in_v1(std::uint64_t cell) const;
  bool in_v2(std::uint64_t cell) const;
  std::optional<Digits> transport_12(const Digits& inner1) const; // V1 point -> piece-2 point
  std::optional<Digits> transport_21(const Digits& inner2) const;
  std::optional<Digits> route_piece2_point(Digits inner2) const;  // into glued coordinates
};

ActionSystemPtr fuse(FusionSpec spec);

struct FusedMinimality {
  MinimalityVerdict verdict;
  bool certified = true; // false when projection transport limited the depth
};
FusedMinimality fused_minimality(const ActionSystem& fused, int depth, int alpha,
                                 std::size_t budget = 1u << 20);

} // namespace mbx
