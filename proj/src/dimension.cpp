#include "mbx/dimension.hpp"

#include <cmath>

#include "mbx/entropy.hpp"

namespace mbx {

CylinderSet ball(const LevelSpace& sp, const WeightedMetric& m, const Digits& center,
                 const Rat& r, int depth) {
  if (static_cast<int>(center.size()) < depth) throw UsageError("center shallower than depth");
  if (r < Rat(0)) throw UsageError("negative radius");
  if (sp.coherent) {
    auto n = m.ball_depth(r, depth);
    int d = n ? std::min(*n, depth) : depth;
    return canonical(sp, {Digits(center.begin(), center.begin() + d)});
  }
  if (!m.separated_tail(depth))
    throw UnsupportedMetric("free-product space balls need the separated-tail condition");
  std::vector<Digits> in;
  for (const auto& c : sp.cells(depth)) {
    Digits cc(center.begin(), center.begin() + depth);
    if (distance(sp, m, cc, c) <= r) in.push_back(c);
  }
  return canonical(sp, std::move(in));
}

DimensionReport box_dimension_estimate(const LevelSpace& sp, const WeightedMetric& m,
                                       int depth_lo, int depth_hi) {
  if (depth_lo < 1 || depth_hi < depth_lo) throw UsageError("bad depth range");
  DimensionReport rep;
  for (int n = depth_lo; n <= depth_hi; ++n) {
    Rat scale = m.tail(n + 1); // diameter of a depth-n cylinder
    if (!scale.is_positive())
      throw UsageError("scale vanishes at depth " + std::to_string(n) +
                       "; no further box scales exist");
    DimensionRow row;
    row.depth = n;
    row.scale = scale;
    try {
      row.count = sp.cell_count(n); // balls of radius scale are exactly depth-n cylinders
    } catch (const ResourceLimit&) {
      rep.truncated = true; // partial table; the fit uses what was countable
      break;
    }
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) throw ResourceLimit("no depth in the range was countable");
  if (rep.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
      x.push_back(-std::log(r.scale.to_double()));
      y.push_back(std::log(static_cast<double>(r.count)));
    }
    auto [slope, res] = least_squares(x, y);
    rep.slope = slope;
    rep.residuals = res;
    rep.slope_defined = true;
  }
  return rep;
}

DoublingReport doubling_check(const RefinementCounter& rc, const WeightedMetric& m,
                              std::int64_t C, int max_depth, int max_halvings,
                              int quantize_depth_cap) {
  if (C <= 1) throw UsageError("doubling constant must exceed 1");
  DoublingReport rep;
  rep.constant = C;
  rep.max_depth = max_depth;
  rep.max_halvings = max_halvings;
  for (int j = 0; j <= max_depth; ++j) {
    Rat r = m.tail(j + 1); // radius at which closed balls are depth-j cylinders
    if (!r.is_positive()) break;
    std::vector<Digits> centers = rc.centers(j);
    for (const auto& c : centers) {
      for (int n = 1; n <= max_halvings; ++n) {
        Rat rho = r / Rat(std::int64_t(1) << n);
        auto md = m.ball_depth(rho, quantize_depth_cap);
        if (!md) continue; // radius below quantization budget: no finer cylinders known
        // bounded towers cannot resolve below their last level; the verdict is
        // certified at the tower's depth
        int target = std::min(std::max(*md, j), rc.count_depth_limit());
        BigUint needed = rc.count(c, target);
        BigUint allowed = BigUint(static_cast<std::uint64_t>(C)).pow(static_cast<unsigned>(n));
        if (needed > allowed) {
          DoublingWitness w;
          w.center = c;
          w.center_depth = j;
          w.radius = r;
          w.halvings = n;
          w.needed = needed.str();
          w.allowed = allowed.str();
          rep.witness = std::move(w);
          rep.pass = false;
          return rep;
        }
      }
    }
  }
  rep.pass = true;
  return rep;
}

} // namespace mbx
