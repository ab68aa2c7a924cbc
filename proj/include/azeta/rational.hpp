#pragma once

// Exact rationals over 128-bit integers with overflow detection.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace azeta {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  std::string out;
  while (u != 0) {
    out.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

inline std::ostream& operator<<(std::ostream& os, i128 v) { return os << to_string(v); }

namespace checked {

inline i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit addition overflow");
  return r;
}

inline i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("128-bit subtraction overflow");
  return r;
}

inline i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiplication overflow");
  return r;
}

inline i128 pow(i128 base, std::uint64_t exp) {
  i128 r = 1;
  while (exp != 0) {
    if (exp & 1U) r = mul(r, base);
    exp >>= 1U;
    if (exp != 0) base = mul(base, base);
  }
  return r;
}

}  // namespace checked

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline i128 lcm128(i128 a, i128 b) {
  if (a == 0 || b == 0) return 0;
  return checked::mul(abs128(a) / gcd128(a, b), abs128(b));
}

/// Floor division for signed integers (rounds toward negative infinity).
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

inline i128 parse_i128(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("malformed integer literal: " + std::string(s));
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer literal: " + std::string(s));
    v = checked::add(checked::mul(v, 10), s[i] - '0');
  }
  return neg ? -v : v;
}

/// Reduced fraction num/den with den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(i128 n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  template <typename T>
    requires(std::is_integral_v<T> && !std::is_same_v<T, i128> && !std::is_same_v<T, bool>)
  Rational(T n) : num_(static_cast<i128>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(i128 n, i128 d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  [[nodiscard]] i128 num() const { return num_; }
  [[nodiscard]] i128 den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  [[nodiscard]] i128 floor() const { return floor_div(num_, den_); }
  [[nodiscard]] i128 ceil() const { return ceil_div(num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const i128 g = gcd128(a.den_, b.den_);
    const i128 da = a.den_ / g;
    const i128 db = b.den_ / g;
    return {checked::add(checked::mul(a.num_, db), checked::mul(b.num_, da)), checked::mul(a.den_, db)};
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.num_ = checked::sub(0, a.num_);
    r.den_ = a.den_;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const i128 g1 = gcd128(a.num_, b.den_);
    const i128 g2 = gcd128(b.num_, a.den_);
    const i128 n = checked::mul(g1 == 0 ? a.num_ : a.num_ / g1, g2 == 0 ? b.num_ : b.num_ / g2);
    const i128 d = checked::mul(a.den_ / (g2 == 0 ? 1 : g2), b.den_ / (g1 == 0 ? 1 : g1));
    return {n, d};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = abs128(b.num_);
    return a * inv;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    return checked::mul(a.num_, b.den_) <=> checked::mul(b.num_, a.den_);
  }

  [[nodiscard]] std::string to_string() const {
    if (den_ == 1) return azeta::to_string(num_);
    return azeta::to_string(num_) + "/" + azeta::to_string(den_);
  }

  /// Accepts "a", "-a", "a/b".
  static Rational parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return {parse_i128(s)};
    return {parse_i128(s.substr(0, slash)), parse_i128(s.substr(slash + 1))};
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const i128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  i128 num_ = 0;
  i128 den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace azeta
