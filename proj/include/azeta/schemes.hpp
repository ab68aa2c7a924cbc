#pragma once

// Punctured lines A_n = A^1 \ {0..n-1}, punctured tori G_n = G_m \ mu_{n-1},
// and Pell conics C^Delta: closed-form counts, envelopes, and oracles.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "azeta/arith.hpp"
#include "azeta/monoid.hpp"
#include "azeta/puiseux.hpp"

namespace azeta {

namespace detail {

inline i128 prime_power_value(u64 p, unsigned m) { return checked::pow(static_cast<i128>(p), m); }

inline PuiseuxPoly linear(i128 lead, i128 c) {
  return PuiseuxPoly::monomial(Rational(lead), 1) + PuiseuxPoly::constant(Rational(c));
}

}  // namespace detail

/// #A_n(F_q) = q - min{p, n}.
inline i128 count_An(u64 n, u64 p, unsigned m) {
  return detail::prime_power_value(p, m) - static_cast<i128>(std::min<u64>(p, n));
}

/// #G_n(F_q) = (q - 1) - gcd(q - 1, n - 1).
inline i128 count_Gn(u64 n, u64 p, unsigned m) {
  if (n < 2) throw std::invalid_argument("count_Gn: n must be at least 2");
  const i128 q1 = detail::prime_power_value(p, m) - 1;
  return q1 - gcd128(q1, static_cast<i128>(n - 1));
}

/// (t - n_1, t - n), n_1 = min{smallest prime outside S, n}.
inline EnvelopePair envelopes_An(u64 n, const std::set<u64>& S) {
  u64 smallest = 2;
  while (S.count(smallest) != 0 || !is_prime(smallest)) ++smallest;
  const u64 n1 = std::min(smallest, n);
  return {detail::linear(1, -static_cast<i128>(n1)), detail::linear(1, -static_cast<i128>(n))};
}

/// (t - n_2, t - n), n_2 = 3 if n odd and 2 in S, else 2.
inline EnvelopePair envelopes_Gn(u64 n, const std::set<u64>& S) {
  if (n < 2) throw std::invalid_argument("envelopes_Gn: n must be at least 2");
  const i128 n2 = (n % 2 == 1 && S.count(2) != 0) ? 3 : 2;
  return {detail::linear(1, -n2), detail::linear(1, -static_cast<i128>(n))};
}

/// Generic-fibre envelopes: (t - n, t - n) for A_n, (t - 2, t - n) for G_n.
inline EnvelopePair qfiber_envelopes_An(u64 n) { return {detail::linear(1, -static_cast<i128>(n)), detail::linear(1, -static_cast<i128>(n))}; }
inline EnvelopePair qfiber_envelopes_Gn(u64 n) {
  if (n < 2) throw std::invalid_argument("qfiber_envelopes_Gn: n must be at least 2");
  return {detail::linear(1, -2), detail::linear(1, -static_cast<i128>(n))};
}

/// The affine conic x^2 - (D/4) y^2 = 1 (D = 0 mod 4) or
/// x^2 + xy + ((1 - D)/4) y^2 = 1 (D = 1 mod 4).
class PellConic {
 public:
  explicit PellConic(i64 discriminant) : delta_(discriminant) {
    if (delta_ == 0) throw std::invalid_argument("Pell conic discriminant must be nonzero");
    const i64 r = ((delta_ % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("Pell conic discriminant must be 0 or 1 mod 4");
    bad_primes_ = prime_divisors(delta_);
  }

  [[nodiscard]] i64 discriminant() const { return delta_; }
  /// S_Delta: primes dividing Delta.
  [[nodiscard]] const std::set<u64>& bad_primes() const { return bad_primes_; }
  [[nodiscard]] bool is_square() const {
    if (delta_ < 0) return false;
    const i128 s = isqrt(static_cast<i128>(delta_));
    return s * s == delta_;
  }

 private:
  i64 delta_;
  std::set<u64> bad_primes_;
};

/// Four-case closed form for #C^Delta(F_{p^m}).
inline i128 count_pell(const PellConic& C, u64 p, unsigned m) {
  if (!is_prime(p)) throw std::invalid_argument("count_pell: p must be prime");
  const i128 q = detail::prime_power_value(p, m);
  const i64 d = C.discriminant();
  if (p != 2) {
    if (d % static_cast<i64>(p) == 0) return 2 * q;
    const int chi = legendre(d, p);
    return q - ((chi == -1 && m % 2 == 1) ? -1 : 1);
  }
  if (d % 2 == 0) return q;
  // (Delta^2 - 1)/8 is odd iff Delta = +-3 mod 8.
  const i128 e = (static_cast<i128>(d) * d - 1) / 8;
  const bool negative = (e % 2 != 0) && (m % 2 == 1);
  return q - (negative ? -1 : 1);
}

/// Exhaustive count over F_{p^m}. For odd p each row y is counted from a
/// table of square multiplicities after completing the square in x.
inline i128 count_pell_oracle(const PellConic& C, u64 p, unsigned m, u64 bound = kDefaultFieldBound) {
  const SmallField F = build_field(p, m, bound);
  const u64 q = F.order();
  const i64 d = C.discriminant();
  const bool split_form = ((d % 4) + 4) % 4 == 1;
  // x^2 + b*x*y + c*y^2 = 1 with b in {0, 1}.
  const auto c = split_form ? F.from_integer((1 - static_cast<i128>(d)) / 4) : F.from_integer(-static_cast<i128>(d) / 4);
  const auto one = F.one();
  i128 count = 0;
  if (p == 2) {
    for (u64 x = 0; x < q; ++x) {
      for (u64 y = 0; y < q; ++y) {
        const auto X = static_cast<SmallField::Element>(x);
        const auto Y = static_cast<SmallField::Element>(y);
        auto v = F.mul(X, X);
        if (split_form) v = F.add(v, F.mul(X, Y));
        v = F.add(v, F.mul(c, F.mul(Y, Y)));
        if (v == one) ++count;
      }
    }
    return count;
  }
  std::vector<u64> roots(q, 0);  // roots[v] = #{u : u^2 = v}
  for (u64 u = 0; u < q; ++u) {
    const auto U = static_cast<SmallField::Element>(u);
    ++roots[F.mul(U, U)];
  }
  // x^2 + b x y = (x + b y / 2)^2 - b^2 y^2 / 4.
  const auto quarter = F.pow(F.from_integer(4), q - 2);
  for (u64 y = 0; y < q; ++y) {
    const auto Y = static_cast<SmallField::Element>(y);
    const auto y2 = F.mul(Y, Y);
    auto target = F.sub(one, F.mul(c, y2));
    if (split_form) target = F.add(target, F.mul(quarter, y2));
    count += static_cast<i128>(roots[target]);
  }
  return count;
}

/// Ceiling/floor polynomials of C^Delta over Z[S^{-1}].
inline EnvelopePair envelopes_pell(const PellConic& C, const std::set<u64>& S) {
  const auto& SD = C.bad_primes();
  const bool odd_bad_inverted =
      std::all_of(SD.begin(), SD.end(), [&S](u64 p) { return p == 2 || S.count(p) != 0; });
  const bool all_bad_inverted = std::all_of(SD.begin(), SD.end(), [&S](u64 p) { return S.count(p) != 0; });
  PuiseuxPoly ceiling;
  if (!odd_bad_inverted) {
    ceiling = detail::linear(2, 0);
  } else if (!C.is_square()) {
    ceiling = detail::linear(1, 1);
  } else if (all_bad_inverted) {
    ceiling = detail::linear(1, -1);
  } else {
    ceiling = detail::linear(1, 0);  // even square, 2 not inverted
  }
  return {ceiling, detail::linear(1, -1)};
}

inline EnvelopePair qfiber_envelopes_pell(const PellConic& C) {
  return {C.is_square() ? detail::linear(1, -1) : detail::linear(1, 1), detail::linear(1, -1)};
}

}  // namespace azeta
