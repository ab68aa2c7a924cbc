#pragma once

// Absolute zeta functions as exact formal products prod_rho (s - rho)^{m(rho)}.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "azeta/puiseux.hpp"
#include "azeta/rational.hpp"

namespace azeta {

class FormalProduct {
 public:
  /// root -> multiplicity, ascending roots, no zero multiplicities.
  using FactorMap = std::map<Rational, Rational>;

  FormalProduct() = default;
  explicit FormalProduct(const FactorMap& factors) {
    for (const auto& [root, m] : factors) multiply_factor(root, m);
  }

  [[nodiscard]] const FactorMap& factors() const { return factors_; }
  [[nodiscard]] bool is_one() const { return factors_.empty(); }

  [[nodiscard]] Rational multiplicity(const Rational& root) const {
    auto it = factors_.find(root);
    return it == factors_.end() ? Rational(0) : it->second;
  }

  /// Multiplies in (s - root)^m.
  void multiply_factor(const Rational& root, const Rational& m) {
    if (m.is_zero()) return;
    auto [it, inserted] = factors_.try_emplace(root, m);
    if (!inserted) {
      it->second += m;
      if (it->second.is_zero()) factors_.erase(it);
    }
  }

  /// Sum of all multiplicities (the order at infinity, negated).
  [[nodiscard]] Rational total_multiplicity() const {
    Rational s = 0;
    for (const auto& [root, m] : factors_) s += m;
    return s;
  }

  friend FormalProduct operator*(FormalProduct a, const FormalProduct& b) {
    for (const auto& [root, m] : b.factors_) a.multiply_factor(root, m);
    return a;
  }

  friend bool operator==(const FormalProduct&, const FormalProduct&) = default;

  /// "(s-1/2)^2 / (s (s-1))"; the empty product prints as "1".
  [[nodiscard]] std::string to_string() const;
  static FormalProduct parse(std::string_view text);

 private:
  FactorMap factors_;
};

namespace detail {

inline std::string factor_text(const Rational& root, const Rational& m) {
  std::string base;
  if (root.is_zero()) {
    base = "s";
  } else if (root.sign() > 0) {
    base = "(s-" + root.to_string() + ")";
  } else {
    base = "(s+" + (-root).to_string() + ")";
  }
  if (m == Rational(1)) return base;
  return base + (m.is_integer() ? "^" + m.to_string() : "^{" + m.to_string() + "}");
}

}  // namespace detail

inline std::string FormalProduct::to_string() const {
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (const auto& [root, m] : factors_) {
    if (m.sign() > 0) {
      num.push_back(detail::factor_text(root, m));
    } else {
      den.push_back(detail::factor_text(root, -m));
    }
  }
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i == 0 ? "" : " ") + parts[i];
    return s;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.empty()) return out;
  out += " / ";
  if (den.size() == 1) return out + den[0];
  return out + "(" + join(den) + ")";
}

namespace detail {

// Grammar (whitespace-insensitive):
//   product  := '1' | factor+
//   expr     := product [ '/' ( '(' factor+ ')' | factor ) ]
//   factor   := ( 's' | '(' 's' [ ('+'|'-') rational ] ')' ) [ '^' power ]
//   power    := integer | '{' rational '}' | '(' rational ')'
class ProductParser {
 public:
  explicit ProductParser(std::string_view s) {
    for (char ch : s) {
      if (!std::isspace(static_cast<unsigned char>(ch))) text_.push_back(ch);
    }
  }

  FormalProduct parse() {
    if (text_.empty()) throw std::invalid_argument("empty product expression");
    FormalProduct out;
    if (peek() == '1' && (pos_ + 1 == text_.size() || text_[pos_ + 1] == '/')) {
      ++pos_;
    } else {
      while (pos_ < text_.size() && peek() != '/') factor(out, 1);
    }
    if (peek() == '/') {
      ++pos_;
      denominator(out);
    }
    if (pos_ != text_.size()) fail("trailing input");
    return out;
  }

 private:
  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("product parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                                text_ + "'");
  }

  // Either one factor closing the input, or a parenthesised group of factors.
  void denominator(FormalProduct& out) {
    const std::size_t start = pos_;
    try {
      FormalProduct single;
      factor(single, -1);
      if (pos_ == text_.size()) {
        out = out * single;
        return;
      }
    } catch (const std::invalid_argument&) {
    }
    pos_ = start;
    if (peek() != '(') fail("expected a denominator");
    ++pos_;
    while (peek() != ')') {
      if (pos_ >= text_.size()) fail("unterminated denominator");
      factor(out, -1);
    }
    ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  Rational rational_literal() {
    std::string s;
    if (peek() == '-' || peek() == '+') s.push_back(text_[pos_++]);
    s += digits();
    if (peek() == '/') {
      ++pos_;
      s += "/" + digits();
    }
    return Rational::parse(s);
  }

  void factor(FormalProduct& out, int sign) {
    Rational root = 0;
    if (peek() == 's') {
      ++pos_;
    } else if (peek() == '(') {
      ++pos_;
      if (peek() != 's') fail("expected 's'");
      ++pos_;
      if (peek() == '-' || peek() == '+') {
        const bool minus = peek() == '-';
        ++pos_;
        std::string s = digits();
        if (peek() == '/') {
          ++pos_;
          s += "/" + digits();
        }
        root = Rational::parse(s);
        if (!minus) root = -root;
      }
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else {
      fail("expected a factor");
    }
    Rational m = 1;
    if (peek() == '^') {
      ++pos_;
      if (peek() == '{' || peek() == '(') {
        const char close = peek() == '{' ? '}' : ')';
        ++pos_;
        m = rational_literal();
        if (peek() != close) fail("unterminated exponent");
        ++pos_;
      } else {
        std::string s;
        if (peek() == '-') s.push_back(text_[pos_++]);
        m = Rational::parse(s + digits());
      }
    }
    out.multiply_factor(root, m * Rational(sign));
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormalProduct FormalProduct::parse(std::string_view text) { return detail::ProductParser(text).parse(); }

/// Soule's limit: sum a_i t^{e_i} |-> prod (s - e_i)^{-a_i}.
inline FormalProduct soule_zeta(const PuiseuxPoly& f) {
  FormalProduct z;
  for (const auto& [e, c] : f.terms()) z.multiply_factor(e, -c);
  return z;
}

/// Modified Kurokawa tensor product for real roots:
/// m(rho) = - sum_{rho1 + rho2 = rho} m1(rho1) m2(rho2).
inline FormalProduct tensor(const FormalProduct& z1, const FormalProduct& z2) {
  FormalProduct out;
  for (const auto& [r1, m1] : z1.factors()) {
    for (const auto& [r2, m2] : z2.factors()) out.multiply_factor(r1 + r2, -(m1 * m2));
  }
  return out;
}

struct Reflection {
  std::optional<int> sign;  // empty when the total multiplicity is not an integer
  FormalProduct product;
};

/// Z(d - s) = sign * prod (s - (d - rho))^{m(rho)}, sign = (-1)^{sum m}.
inline Reflection reflect(const FormalProduct& z, const Rational& d) {
  Reflection out;
  for (const auto& [root, m] : z.factors()) out.product.multiply_factor(d - root, m);
  const Rational total = z.total_multiplicity();
  if (total.is_integer()) {
    const i128 parity = total.num() % 2;
    out.sign = parity == 0 ? 1 : -1;
  }
  return out;
}

struct FunctionalEquation {
  bool symmetric = false;
  std::optional<int> sign;
};

/// Whether Z(d - s) = +-Z(s).
inline FunctionalEquation check_functional_equation(const FormalProduct& z, const Rational& d) {
  const Reflection r = reflect(z, d);
  FunctionalEquation out;
  out.symmetric = r.product == z;
  if (out.symmetric) out.sign = r.sign;
  return out;
}

}  // namespace azeta
