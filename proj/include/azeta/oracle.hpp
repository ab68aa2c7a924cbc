#pragma once

// Brute-force counters over explicit finite fields. They share no code with
// the closed forms they are compared against.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "azeta/arith.hpp"
#include "azeta/elliptic.hpp"
#include "azeta/rational.hpp"

namespace azeta::oracle {

/// #Hom(Z^r x prod Z/t_j, F_q^x): free generators go anywhere in F_q^x and a
/// generator of order t_j goes to any g with g^{t_j} = 1, all enumerated.
inline i128 hom_count(const SmallField& F, unsigned rank, const std::vector<i64>& cyclic_orders) {
  const u64 q = F.order();
  i128 total = checked::pow(static_cast<i128>(q - 1), rank);
  for (i64 t : cyclic_orders) {
    if (t < 1) throw std::invalid_argument("hom_count: cyclic orders must be positive");
    i128 images = 0;
    for (u64 g = 1; g < q; ++g) {
      if (F.pow(static_cast<SmallField::Element>(g), static_cast<u64>(t)) == F.one()) ++images;
    }
    total = checked::mul(total, images);
  }
  return total;
}

/// #{x in F_q : x not in {0, 1, ..., n-1} mod p}.
inline i128 count_An(const SmallField& F, u64 n) {
  std::vector<bool> removed(F.order(), false);
  for (u64 k = 0; k < n; ++k) removed[F.from_integer(static_cast<i128>(k))] = true;
  i128 c = 0;
  for (u64 x = 0; x < F.order(); ++x) c += removed[x] ? 0 : 1;
  return c;
}

/// #{x in F_q^x : x^{n-1} != 1}.
inline i128 count_Gn(const SmallField& F, u64 n) {
  i128 c = 0;
  for (u64 x = 1; x < F.order(); ++x) {
    if (F.pow(static_cast<SmallField::Element>(x), n - 1) != F.one()) ++c;
  }
  return c;
}

/// Projective #E(F_q) for y^2 = x^3 + a x + b: affine solutions plus the point at infinity.
inline i128 count_elliptic(const SmallField& F, i64 a, i64 b) {
  const u64 q = F.order();
  std::vector<std::uint32_t> roots(q, 0);  // roots[v] = #{y : y^2 = v}
  for (u64 y = 0; y < q; ++y) {
    const auto Y = static_cast<SmallField::Element>(y);
    ++roots[F.mul(Y, Y)];
  }
  const auto A = F.from_integer(a);
  const auto B = F.from_integer(b);
  i128 affine = 0;
  for (u64 x = 0; x < q; ++x) {
    const auto X = static_cast<SmallField::Element>(x);
    const auto rhs = F.add(F.add(F.mul(F.mul(X, X), X), F.mul(A, X)), B);
    affine += roots[rhs];
  }
  return affine + 1;
}

/// Coefficients z_0..z_M of Z(T) = exp(sum_{m>=1} N_m T^m / m), given N_1..N_M.
inline std::vector<Rational> zeta_series(const std::vector<i128>& counts) {
  const std::size_t M = counts.size();
  std::vector<Rational> z(M + 1, Rational(0));
  z[0] = 1;
  // n z_n = sum_{k=1}^{n} N_k z_{n-k}, from Z' = L' Z with k l_k = N_k.
  for (std::size_t n = 1; n <= M; ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += Rational(counts[k - 1]) * z[n - k];
    z[n] = s / Rational(static_cast<i128>(n));
  }
  return z;
}

/// (1 - T)(1 - pT) Z(T) truncated at degree M; for a good reduction of an
/// elliptic curve this is 1 - a_p T + p T^2 followed by zeros.
inline std::vector<Rational> zeta_numerator(u64 p, const std::vector<i128>& counts) {
  const auto z = zeta_series(counts);
  std::vector<Rational> out(z.size(), Rational(0));
  const Rational P(static_cast<i128>(p));
  for (std::size_t n = 0; n < z.size(); ++n) {
    Rational v = z[n];
    if (n >= 1) v -= (Rational(1) + P) * z[n - 1];
    if (n >= 2) v += P * z[n - 2];
    out[n] = v;
  }
  return out;
}

}  // namespace azeta::oracle
