#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mbx {

// Unsigned big integer, little-endian 32-bit limbs.  Sized for pattern-count
// arithmetic (thousands of digits), not general-purpose number theory.
class BigUint {
public:
  BigUint() = default;
  BigUint(std::uint64_t v);

  static BigUint one() { return BigUint(1); }

  bool is_zero() const { return limbs_.empty(); }
  std::size_t bit_length() const;

  friend BigUint operator+(const BigUint& a, const BigUint& b);
  friend BigUint operator-(const BigUint& a, const BigUint& b); // requires a >= b
  friend BigUint operator*(const BigUint& a, const BigUint& b);
  BigUint pow(unsigned e) const;

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }
  friend bool operator<(const BigUint& a, const BigUint& b);
  friend bool operator<=(const BigUint& a, const BigUint& b) { return !(b < a); }
  friend bool operator>(const BigUint& a, const BigUint& b) { return b < a; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return !(a < b); }

  // natural log, accurate to ~1e-15 relative; 0 maps to -inf
  double ln() const;
  double log2() const;

  std::string str() const; // decimal
  std::uint64_t to_u64() const; // requires bit_length() <= 64

private:
  std::vector<std::uint32_t> limbs_;
  void trim();
};

} // namespace mbx
