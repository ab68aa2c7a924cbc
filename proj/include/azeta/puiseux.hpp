#pragma once

// Puiseux polynomials: finite sums of a * t^e with rational coefficients and
// non-negative rational exponents, with exact and certified evaluation at
// positive integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "azeta/arith.hpp"
#include "azeta/rational.hpp"

namespace azeta {

class PuiseuxPoly {
 public:
  /// exponent -> coefficient, largest exponent first; no zero coefficients.
  using TermMap = std::map<Rational, Rational, std::greater<>>;

  PuiseuxPoly() = default;

  static PuiseuxPoly constant(const Rational& c) { return monomial(c, 0); }

  static PuiseuxPoly monomial(const Rational& coeff, const Rational& exponent) {
    if (exponent.sign() < 0) throw std::invalid_argument("Puiseux exponents must be non-negative");
    PuiseuxPoly f;
    if (!coeff.is_zero()) f.terms_.emplace(exponent, coeff);
    return f;
  }

  /// The variable t itself.
  static PuiseuxPoly t() { return monomial(1, 1); }

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Rational coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Largest exponent; zero for the zero polynomial.
  [[nodiscard]] Rational degree() const { return terms_.empty() ? Rational(0) : terms_.begin()->first; }

  [[nodiscard]] Rational leading_coefficient() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  /// Least common denominator of the exponents; f is a polynomial in t^{1/d}.
  [[nodiscard]] i128 exponent_denominator() const {
    i128 d = 1;
    for (const auto& [e, c] : terms_) d = lcm128(d, e.den());
    return d;
  }

  [[nodiscard]] bool is_ordinary_polynomial() const { return exponent_denominator() == 1; }

  void add_term(const Rational& coeff, const Rational& exponent) {
    if (exponent.sign() < 0) throw std::invalid_argument("Puiseux exponents must be non-negative");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(c, e);
    return a;
  }
  friend PuiseuxPoly operator-(const PuiseuxPoly& a) { return a.scaled(-1); }
  friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a + (-b); }
  friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ca * cb, ea + eb);
    }
    return out;
  }
  PuiseuxPoly& operator+=(const PuiseuxPoly& o) { return *this = *this + o; }

  [[nodiscard]] PuiseuxPoly scaled(const Rational& c) const {
    PuiseuxPoly out;
    if (c.is_zero()) return out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
    return out;
  }

  friend bool operator==(const PuiseuxPoly&, const PuiseuxPoly&) = default;

  /// Canonical text, e.g. "t + 2t^{1/2} + 1", "(1/2)t^2 - 3".
  [[nodiscard]] std::string to_string() const;

  /// Parses terms like "3t^2", "2t^{1/2}", "t^(1/3)", "(1/2)t", "-1".
  static PuiseuxPoly parse(std::string_view text);

 private:
  TermMap terms_;
};

inline PuiseuxPoly add(const PuiseuxPoly& f, const PuiseuxPoly& g) { return f + g; }
inline PuiseuxPoly scale(const PuiseuxPoly& f, const Rational& c) { return f.scaled(c); }

/// T * (t - 1)^r expanded.
inline PuiseuxPoly expand_binomial(i128 T, unsigned r) {
  PuiseuxPoly out;
  i128 binom = 1;  // C(r, k)
  for (unsigned k = 0; k <= r; ++k) {
    const i128 sign = ((r - k) % 2 == 0) ? 1 : -1;
    out.add_term(checked::mul(checked::mul(T, sign), binom), Rational(static_cast<i128>(k)));
    binom = checked::mul(binom, r - k) / (k + 1);
  }
  return out;
}

inline std::string PuiseuxPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    const bool is_const = e.is_zero();
    if (is_const) {
      out += mag.to_string();
      continue;
    }
    if (mag != Rational(1)) out += mag.is_integer() ? mag.to_string() : "(" + mag.to_string() + ")";
    out += "t";
    if (e == Rational(1)) continue;
    out += e.is_integer() ? "^" + e.to_string() : "^{" + e.to_string() + "}";
  }
  return out;
}

namespace detail {

class PuiseuxParser {
 public:
  explicit PuiseuxParser(std::string_view s) {
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  PuiseuxPoly parse() {
    if (text_.empty()) throw std::invalid_argument("empty Puiseux expression");
    PuiseuxPoly out;
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coeff, exponent] = term();
      out.add_term(coeff * Rational(sign), exponent);
    }
    return out;
  }

 private:
  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("Puiseux parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                                text_ + "'");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  // a or a/b, optionally signed inside brackets.
  Rational rational_literal(bool allow_sign) {
    std::string s;
    if (allow_sign && (peek() == '-' || peek() == '+')) s.push_back(text_[pos_++]);
    s += digits();
    if (peek() == '/') {
      ++pos_;
      s += "/" + digits();
    }
    return Rational::parse(s);
  }

  Rational bracketed(char close) {
    ++pos_;
    Rational r = rational_literal(true);
    if (peek() != close) fail(std::string("expected '") + close + "'");
    ++pos_;
    return r;
  }

  std::pair<Rational, Rational> term() {
    Rational coeff = 1;
    bool have_coeff = false;
    if (peek() == '(') {
      coeff = bracketed(')');
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = rational_literal(false);
      have_coeff = true;
    }
    if (peek() == '*') {
      if (!have_coeff) fail("dangling '*'");
      ++pos_;
    }
    if (peek() != 't') {
      if (!have_coeff) fail("expected a term");
      return {coeff, 0};
    }
    ++pos_;
    Rational exponent = 1;
    if (peek() == '^') {
      ++pos_;
      if (peek() == '{') {
        exponent = bracketed('}');
      } else if (peek() == '(') {
        exponent = bracketed(')');
      } else {
        exponent = Rational::parse(digits());
      }
    }
    if (exponent.sign() < 0) fail("negative exponent");
    return {coeff, exponent};
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PuiseuxPoly PuiseuxPoly::parse(std::string_view text) { return detail::PuiseuxParser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct ValueAtOne {
  Rational value;
  bool is_integer = false;
};

/// f(1) with the branch 1^{1/n} = 1: the sum of the coefficients.
inline ValueAtOne value_at_one(const PuiseuxPoly& f) {
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return {s, s.is_integer()};
}

namespace detail {

// q^e for q a perfect den(e)-th power.
inline std::optional<Rational> exact_power(u64 q, const Rational& e) {
  const auto root = exact_root(q, static_cast<unsigned>(e.den()));
  if (!root) return std::nullopt;
  return Rational(checked::pow(static_cast<i128>(*root), static_cast<u64>(e.num())));
}

}  // namespace detail

/// Exact f(q). Requires q to be a perfect d-th power, d the exponent
/// denominator of f; the real positive root is used.
inline Rational eval_exact(const PuiseuxPoly& f, u64 q) {
  if (q < 1) throw std::invalid_argument("eval_exact: q must be positive");
  const i128 d = f.exponent_denominator();
  const auto root = exact_root(q, static_cast<unsigned>(d));
  if (!root) {
    throw std::domain_error("eval_exact: " + std::to_string(q) + " is not a perfect " + azeta::to_string(d) +
                            "-th power");
  }
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) {
    const i128 k = e.num() * (d / e.den());  // q^e = root^k
    s += c * Rational(checked::pow(static_cast<i128>(*root), static_cast<u64>(k)));
  }
  return s;
}

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64U);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

// floor(n^{1/k}) for n >= 0.
inline BigInt big_iroot(const BigInt& n, unsigned k) {
  if (n < 2 || k == 1) return n;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  BigInt x = BigInt(1) << ((bits + k - 1) / k);  // x >= root
  while (true) {
    BigInt xk1 = boost::multiprecision::pow(x, k - 1);
    BigInt y = ((k - 1) * x + n / xk1) / k;
    if (y >= x) break;
    x = y;
  }
  while (boost::multiprecision::pow(x, k) > n) --x;
  while (boost::multiprecision::pow(x + 1, k) <= n) ++x;
  return x;
}

inline BigInt big_floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt big_ceil_div(const BigInt& a, const BigInt& b) { return -big_floor_div(-a, b); }

struct Enclosure {
  BigInt lo, hi, scale;  // lo/scale <= f(q) <= hi/scale
};

// Scaled-integer enclosure of f(q) with `bits` fractional bits per term.
inline Enclosure enclose(const PuiseuxPoly& f, u64 q, unsigned bits) {
  i128 coeff_lcm = 1;
  for (const auto& [e, c] : f.terms()) coeff_lcm = lcm128(coeff_lcm, c.den());
  const BigInt big_lcm = big(coeff_lcm);
  Enclosure out{0, 0, big_lcm << bits};
  for (const auto& [e, c] : f.terms()) {
    const auto k = static_cast<unsigned>(e.den());
    // floor(q^e * 2^bits) = floor((q^num * 2^(bits*k))^(1/k)).
    BigInt radicand = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e.num()));
    radicand <<= bits * k;
    const BigInt x = big_iroot(radicand, k);
    const bool exact = boost::multiprecision::pow(x, k) == radicand;
    const BigInt w = big(c.num()) * (big_lcm / big(c.den()));
    if (w > 0) {
      out.lo += w * x;
      out.hi += w * (exact ? x : BigInt(x + 1));
    } else {
      out.lo += w * (exact ? x : BigInt(x + 1));
      out.hi += w * x;
    }
  }
  return out;
}

// Exact rationality test. Write q = c^j with c not a perfect power; then
// {c^{i/D}} are linearly independent over Q, so f(q) is rational iff every
// irrational class cancels, and then equals the rational class.
inline std::optional<Rational> rational_value(const PuiseuxPoly& f, u64 q) {
  u64 base = q;
  unsigned power = 1;
  for (unsigned k = 63; k >= 2; --k) {
    if (auto r = exact_root(q, k); r && *r > 1) {
      base = static_cast<u64>(*r);
      power = k;
      break;
    }
  }
  std::map<Rational, Rational> classes;  // fractional part of j*e -> coefficient sum
  for (const auto& [e, c] : f.terms()) {
    const Rational je = e * Rational(static_cast<i128>(power));
    const i128 whole = je.floor();
    const Rational frac = je - Rational(whole);
    classes[frac] += c * Rational(checked::pow(static_cast<i128>(base), static_cast<u64>(whole)));
  }
  Rational value = 0;
  for (const auto& [frac, sum] : classes) {
    if (frac.is_zero()) {
      value = sum;
    } else if (!sum.is_zero()) {
      return std::nullopt;
    }
  }
  return value;
}

enum class Rounding { floor, ceil };

inline i128 to_i128(const BigInt& v) {
  if (boost::multiprecision::abs(v) > big(std::numeric_limits<i128>::max())) {
    throw std::overflow_error("Puiseux value exceeds 128 bits");
  }
  const bool neg = v < 0;
  BigInt a = neg ? BigInt(-v) : v;
  const u128 hi = static_cast<u128>(static_cast<std::uint64_t>(a >> 64));
  const u128 lo = static_cast<u128>(static_cast<std::uint64_t>(a & BigInt(UINT64_MAX)));
  const i128 r = static_cast<i128>((hi << 64U) | lo);
  return neg ? -r : r;
}

inline i128 rounded_eval(const PuiseuxPoly& f, u64 q, Rounding mode) {
  if (q < 1) throw std::invalid_argument("floor/ceil evaluation requires q >= 1");
  auto round = [mode](const Rational& r) { return mode == Rounding::floor ? r.floor() : r.ceil(); };
  const i128 d = f.exponent_denominator();
  if (exact_root(q, static_cast<unsigned>(d))) return round(eval_exact(f, q));

  auto attempt = [&](unsigned bits) -> std::optional<i128> {
    const Enclosure enc = enclose(f, q, bits);
    const BigInt a = mode == Rounding::floor ? big_floor_div(enc.lo, enc.scale) : big_ceil_div(enc.lo, enc.scale);
    const BigInt b = mode == Rounding::floor ? big_floor_div(enc.hi, enc.scale) : big_ceil_div(enc.hi, enc.scale);
    if (a == b) return to_i128(a);
    return std::nullopt;
  };

  for (unsigned bits = 64; bits <= 512; bits *= 2) {
    if (auto r = attempt(bits)) return *r;
  }
  if (auto exact = rational_value(f, q)) return round(*exact);
  // f(q) is irrational, so refinement terminates.
  for (unsigned bits = 1024;; bits *= 2) {
    if (auto r = attempt(bits)) return *r;
  }
}

}  // namespace detail

/// Exact floor(f(q)) for integer q >= 1.
inline i128 floor_eval(const PuiseuxPoly& f, u64 q) { return detail::rounded_eval(f, q, detail::Rounding::floor); }

/// Exact ceil(f(q)) for integer q >= 1.
inline i128 ceil_eval(const PuiseuxPoly& f, u64 q) { return detail::rounded_eval(f, q, detail::Rounding::ceil); }

/// Double approximation, for reporting only.
inline double approx_eval(const PuiseuxPoly& f, double q) {
  double s = 0;
  for (const auto& [e, c] : f.terms()) {
    s += (static_cast<double>(c.num()) / static_cast<double>(c.den())) *
         std::pow(q, static_cast<double>(e.num()) / static_cast<double>(e.den()));
  }
  return s;
}

}  // namespace azeta
