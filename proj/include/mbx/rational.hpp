#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mbx {

struct ArithmeticOverflow : std::runtime_error {
  ArithmeticOverflow() : std::runtime_error("rational arithmetic overflow") {}
};

// Exact rational on int64 numerator/denominator, __int128 intermediates.
// Every metric value in the library is a Rat; verdicts never depend on rounding.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow{};
    return static_cast<std::int64_t>(v);
  }

  static Rat from128(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rat r;
    r.num = narrow(n);
    r.den = narrow(d);
    if (r.num == 0) r.den = 1;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from128((__int128)a.num * b.den + (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from128((__int128)a.num * b.den - (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::invalid_argument("division by zero");
    return from128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rat operator-() const { Rat r(*this); r.num = -r.num; return r; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  bool is_zero() const { return num == 0; }
  bool is_positive() const { return num > 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // b^-e for b >= 2, e >= 0
  static Rat inv_pow(std::int64_t b, int e) {
    __int128 d = 1;
    for (int i = 0; i < e; ++i) {
      d *= b;
      if (d > INT64_MAX) throw ArithmeticOverflow{};
    }
    return Rat(1, static_cast<std::int64_t>(d));
  }
};

} // namespace mbx
