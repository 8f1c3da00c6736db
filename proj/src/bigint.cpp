#include "mbx/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbx {

BigUint::BigUint(std::uint64_t v) {
  while (v) {
    limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  std::uint32_t top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 32;
  while (top) { ++bits; top >>= 1; }
  return bits;
}

BigUint operator+(const BigUint& a, const BigUint& b) {
  BigUint r;
  const auto &x = a.limbs_, &y = b.limbs_;
  std::size_t n = std::max(x.size(), y.size());
  r.limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry;
    if (i < x.size()) s += x[i];
    if (i < y.size()) s += y[i];
    r.limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
  return r;
}

BigUint operator-(const BigUint& a, const BigUint& b) {
  if (a < b) throw std::invalid_argument("BigUint subtraction underflow");
  BigUint r;
  r.limbs_.resize(a.limbs_.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                     (i < b.limbs_.size() ? static_cast<std::int64_t>(b.limbs_[i]) : 0);
    if (d < 0) { d += (1LL << 32); borrow = 1; } else borrow = 0;
    r.limbs_[i] = static_cast<std::uint32_t>(d);
  }
  r.trim();
  return r;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  if (a.is_zero() || b.is_zero()) return BigUint{};
  BigUint r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      std::uint64_t cur = r.limbs_[i + j] +
                          static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.limbs_.size();
    while (carry) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint BigUint::pow(unsigned e) const {
  BigUint base = *this, r = BigUint(1);
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

bool operator<(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
  for (std::size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
  return false;
}

double BigUint::ln() const {
  if (limbs_.empty()) return -std::numeric_limits<double>::infinity();
  // top two limbs as the mantissa; every remaining limb is 32 dropped low bits
  std::size_t n = limbs_.size();
  double mant;
  std::size_t dropped;
  if (n == 1) {
    mant = static_cast<double>(limbs_[0]);
    dropped = 0;
  } else {
    mant = static_cast<double>(limbs_[n - 1]) * 4294967296.0 + static_cast<double>(limbs_[n - 2]);
    dropped = n - 2;
  }
  return std::log(mant) + 32.0 * static_cast<double>(dropped) * std::log(2.0);
}

double BigUint::log2() const { return ln() / std::log(2.0); }

std::string BigUint::str() const {
  if (limbs_.empty()) return "0";
  std::vector<std::uint32_t> tmp = limbs_;
  std::string out;
  while (!tmp.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = tmp.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | tmp[i];
      tmp[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
    std::string chunk = std::to_string(rem);
    if (tmp.empty())
      out.insert(0, chunk);
    else
      out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
  }
  return out;
}

std::uint64_t BigUint::to_u64() const {
  if (bit_length() > 64) throw std::overflow_error("BigUint does not fit u64");
  std::uint64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

} // namespace mbx
