#include "mbx/sturmian.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mbx {

namespace {

__int128 igcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 isqrt128(__int128 n) {
  if (n < 0) throw UsageError("isqrt of negative");
  if (n == 0) return 0;
  __int128 x = static_cast<__int128>(std::sqrt(static_cast<double>(n)));
  while (x > 0 && x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

bool is_square(__int128 n) {
  __int128 r = isqrt128(n);
  return r * r == n;
}

__int128 fdiv(__int128 a, __int128 b) { // floor division, b > 0
  __int128 q = a / b, r = a % b;
  return (r != 0 && r < 0) ? q - 1 : q;
}

struct Mobius {
  __int128 a = 1, b = 0, c = 0, d = 1;
  Mobius then_cf(std::int64_t t) const { // x -> t + 1/x composed on the right
    return Mobius{a * t + b, a, c * t + d, c};
  }
};

} // namespace

QuadIrr QuadIrr::from_continued_fraction(const std::vector<std::int64_t>& prefix,
                                         const std::vector<std::int64_t>& period) {
  if (period.empty()) throw UsageError("slope must be a quadratic irrational (periodic tail)");
  for (std::size_t i = 0; i < period.size(); ++i)
    if (period[i] < 1) throw UsageError("continued fraction terms beyond a0 must be >= 1");
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] < 1) throw UsageError("continued fraction terms beyond a0 must be >= 1");

  Mobius per;
  for (auto t : period) per = per.then_cf(t);
  // periodic point: x = (a x + b)/(c x + d), take the root > 1
  __int128 A = per.c, B = per.d - per.a, C = -per.b;
  __int128 disc = B * B - 4 * A * C;
  if (disc <= 0 || is_square(disc)) throw UsageError("period does not define an irrational");
  QuadIrr x;
  x.D = disc;
  x.u = -B;
  x.v = 1;
  x.w = 2 * A;
  if (x.w < 0) { x.w = -x.w; x.u = -x.u; x.v = -x.v; }

  Mobius pre;
  for (auto t : prefix) pre = pre.then_cf(t);
  // value = (pre.a * x + pre.b) / (pre.c * x + pre.d) with x = (u + v sqrt(D)) / w
  __int128 nu = pre.a * x.u + pre.b * x.w, nv = pre.a * x.v;      // numerator
  __int128 du = pre.c * x.u + pre.d * x.w, dv = pre.c * x.v;      // denominator
  // multiply by the conjugate of the denominator
  __int128 ru = nu * du - nv * dv * x.D;
  __int128 rv = nv * du - nu * dv;
  __int128 rw = du * du - dv * dv * x.D;
  if (rw == 0) throw UsageError("degenerate continued fraction");
  if (rw < 0) { rw = -rw; ru = -ru; rv = -rv; }
  __int128 g = igcd(igcd(ru, rv), rw);
  QuadIrr out;
  out.D = x.D;
  out.u = ru / g;
  out.v = rv / g;
  out.w = rw / g;
  if (out.v == 0) throw UsageError("slope is rational");
  return out;
}

std::int64_t QuadIrr::floor_times(std::int64_t k) const {
  // floor(k (u + v sqrt(D)) / w); the value is irrational for k != 0
  if (k == 0) return 0;
  __int128 a = static_cast<__int128>(k) * u;
  __int128 b = static_cast<__int128>(k) * v;
  __int128 t;
  if (b >= 0) {
    t = isqrt128(b * b * D);
  } else {
    t = -isqrt128(b * b * D) - 1;
  }
  return static_cast<std::int64_t>(fdiv(a + t, w));
}

double QuadIrr::to_double() const {
  return (static_cast<double>(u) + static_cast<double>(v) * std::sqrt(static_cast<double>(D))) /
         static_cast<double>(w);
}

std::vector<int> sturmian_symbols(const QuadIrr& a, std::int64_t k, std::int64_t lo,
                                  std::int64_t hi) {
  std::vector<int> out;
  out.reserve(hi - lo + 1);
  std::int64_t prev = a.floor_times(k + lo);
  for (std::int64_t j = lo; j <= hi; ++j) {
    std::int64_t next = a.floor_times(k + j + 1);
    out.push_back(static_cast<int>(next - prev));
    prev = next;
  }
  return out;
}

std::vector<std::vector<int>> sturmian_factors(const QuadIrr& a, int length) {
  if (length < 1) throw UsageError("factor length must be >= 1");
  for (std::int64_t span : {std::int64_t(256) * length, std::int64_t(2048) * length}) {
    std::vector<int> word = sturmian_symbols(a, 0, -span, span + length);
    std::map<std::vector<int>, int> seen;
    for (std::size_t i = 0; i + length < word.size(); ++i)
      seen.emplace(std::vector<int>(word.begin() + i, word.begin() + i + length), 0);
    if (static_cast<int>(seen.size()) == length + 1) {
      std::vector<std::vector<int>> out;
      for (auto& [f, _] : seen) out.push_back(f);
      return out;
    }
    if (static_cast<int>(seen.size()) > length + 1)
      throw ConstructionError("factor complexity exceeds n+1: slope is not Sturmian");
  }
  throw ConstructionError("factor enumeration window too small for this slope");
}

int sturmian_offset_of_level(int level) {
  if (level < 1) throw UsageError("level must be >= 1");
  if (level == 1) return 0;
  return (level % 2 == 0) ? level / 2 : -(level / 2);
}

namespace {

class SturmSystem final : public ActionSystem {
public:
  SturmSystem(SturmianSpec spec, QuadIrr alpha) : spec_(std::move(spec)), alpha_(alpha) {
    if (spec_.window < 1) throw UsageError("window must be >= 1");
    width_ = 2 * spec_.window + 1;
    horizon_ = width_ + std::max(0, spec_.slack);
    metric_ = WeightedMetric::power(spec_.metric_base);
    // collect window words with a witness orbit index each
    const std::int64_t span = 2048L * width_;
    std::map<Digits, std::int64_t> cells;
    for (std::int64_t k = -span; k <= span; ++k) {
      Digits d = window_digits(k, width_);
      cells.emplace(d, k);
    }
    if (static_cast<int>(cells.size()) != width_ + 1)
      throw ConstructionError("window word count " + std::to_string(cells.size()) +
                              " does not match Sturmian complexity " + std::to_string(width_ + 1));
    std::vector<Digits> adm;
    for (auto& [d, k] : cells) {
      adm.push_back(d);
      witnesses_.push_back(k);
    }
    space_ = make_subshift_space(std::vector<std::uint32_t>(width_, 2), std::move(adm), width_,
                                 /*coherent=*/false);
    // per-shift distortion: any disagreement offset moves one step, changing its
    // center-out level by at most 2, plus horizon-edge terms -> base^3 covers it
    lips_ = Rat(spec_.metric_base * spec_.metric_base * spec_.metric_base);
  }

  int generators() const override { return 1; }
  std::string gen_label(int) const override { return "shift"; }
  Rat gen_lipschitz(int) const override { return lips_; }
  int min_depth() const override { return 1; }
  int max_depth() const override { return width_; }
  std::uint64_t cell_count(int depth) const override { return space_->cell_count(depth); }
  Digits representative(std::uint64_t cell, int depth) const override {
    Digits prefix = space_->cell_digits(cell, depth);
    for (std::size_t i = 0; i < space_->admissible.size(); ++i)
      if (is_prefix(prefix, space_->admissible[i])) return encode(witnesses_[i]);
    throw UsageError("cell without witness");
  }
  std::uint64_t cell_of(const Digits& p, int depth) const override {
    return space_->cell_index(window_digits(decode(p), depth), depth);
  }
  std::optional<Digits> apply(int letter, const Digits& p) const override {
    if (letter != 1 && letter != -1) throw UsageError("letter out of range");
    return encode(decode(p) + (letter == 1 ? 1 : -1));
  }
  Rat dist(const Digits& a, const Digits& b) const override {
    std::int64_t ka = decode(a), kb = decode(b);
    if (ka == kb) return Rat(0);
    Digits da = window_digits(ka, horizon_), db = window_digits(kb, horizon_);
    Rat s(0);
    for (int l = 1; l <= horizon_; ++l)
      if (da[l - 1] != db[l - 1]) s = s + metric_.weight(l);
    return s;
  }
  Rat diameter() const override { return metric_.tail(1); }

  Digits signature(const Digits& p, int) const override {
    Digits sig = window_digits(decode(p), horizon_);
    sig.push_back(p[0]); // keep the orbit index so equal windows of distinct points stay apart
    return sig;
  }
  Rat dist_signatures(const Digits& a, const Digits& b) const override {
    if (a.back() == b.back()) return Rat(0);
    Rat s(0);
    for (int l = 1; l <= horizon_; ++l)
      if (a[l - 1] != b[l - 1]) s = s + metric_.weight(l);
    return s;
  }

  const LevelSpace& space() const { return *space_; }

private:
  SturmianSpec spec_;
  QuadIrr alpha_;
  int width_ = 0, horizon_ = 0;
  WeightedMetric metric_;
  LevelSpacePtr space_;
  std::vector<std::int64_t> witnesses_;
  Rat lips_{1};

  Digits window_digits(std::int64_t k, int depth) const {
    Digits d(depth);
    for (int l = 1; l <= depth; ++l) {
      int off = sturmian_offset_of_level(l);
      std::int64_t f1 = alpha_.floor_times(k + off + 1), f0 = alpha_.floor_times(k + off);
      d[l - 1] = static_cast<std::uint32_t>(f1 - f0);
    }
    return d;
  }
  static Digits encode(std::int64_t k) {
    return Digits{static_cast<std::uint32_t>(k + (1 << 24))};
  }
  static std::int64_t decode(const Digits& p) {
    if (p.size() != 1) throw UsageError("not a rotation-orbit point");
    return static_cast<std::int64_t>(p[0]) - (1 << 24);
  }
};

} // namespace

ActionSystemPtr sturmian_system(const SturmianSpec& spec) {
  QuadIrr a = QuadIrr::from_continued_fraction(spec.cf_prefix, spec.cf_period);
  if (!(a.to_double() > 0 && a.to_double() < 1))
    throw UsageError("slope must lie in (0,1); give the continued fraction of the fractional part");
  return std::make_shared<SturmSystem>(spec, a);
}

} // namespace mbx
