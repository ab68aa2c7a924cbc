#pragma once

// Exact integer utilities: square roots, primality, prime powers, Legendre
// symbols, the prime-power domains that sequences are indexed by, and small
// finite fields used by the brute-force oracles.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "azeta/rational.hpp"

namespace azeta {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Roots
// ---------------------------------------------------------------------------

/// Largest s with s*s <= n. Integer Newton iteration, no floating point.
inline u128 isqrt(u128 n) {
  if (n < 2) return n;
  // Start above the root: 2^ceil(bits/2).
  int bits = 0;
  for (u128 t = n; t != 0; t >>= 1U) ++bits;
  u128 x = u128(1) << unsigned((bits + 1) / 2);
  while (true) {
    const u128 y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

inline i128 isqrt(i128 n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  return static_cast<i128>(isqrt(static_cast<u128>(n)));
}

/// Smallest s with s*s >= n.
inline i128 isqrt_ceil(i128 n) {
  const i128 s = isqrt(n);
  return s * s == n ? s : s + 1;
}

/// Largest r with r^k <= n, for k >= 1.
inline u128 iroot(u128 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: zero index");
  if (k == 1 || n < 2) return n;
  if (k == 2) return isqrt(n);
  int bits = 0;
  for (u128 t = n; t != 0; t >>= 1U) ++bits;
  u128 lo = 1;
  u128 hi = u128(1) << unsigned(bits / int(k) + 1);
  auto pow_le = [&](u128 r) {  // r^k <= n without overflow
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (acc > n / r) return false;
      acc *= r;
    }
    return acc <= n;
  };
  while (lo < hi) {
    const u128 mid = lo + (hi - lo + 1) / 2;
    if (pow_le(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

/// The exact k-th root of n if n is a perfect k-th power.
inline std::optional<u128> exact_root(u128 n, unsigned k) {
  const u128 r = iroot(n, k);
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) acc *= r;
  if (acc == n) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// Deterministic trial division.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (u64 d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// Sieve of Eratosthenes; entry i is true iff i is prime.
inline std::vector<bool> prime_sieve(u64 limit) {
  std::vector<bool> sieve(limit + 1, true);
  sieve[0] = false;
  if (limit >= 1) sieve[1] = false;
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!sieve[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return sieve;
}

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  const auto sieve = prime_sieve(limit);
  for (u64 i = 2; i <= limit; ++i) {
    if (sieve[i]) out.push_back(i);
  }
  return out;
}

/// Prime factorisation by trial division, ascending primes.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Set of primes dividing |n| (n != 0).
inline std::set<u64> prime_divisors(i128 n) {
  if (n == 0) throw std::invalid_argument("prime_divisors of zero");
  std::set<u64> out;
  u128 m = static_cast<u128>(abs128(n));
  for (u64 d = 2; u128(d) * d <= m; ++d) {
    if (m % d != 0) continue;
    out.insert(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) {
    if (m > u128(UINT64_MAX)) throw std::overflow_error("prime factor exceeds 64 bits");
    out.insert(static_cast<u64>(m));
  }
  return out;
}

struct PrimePower {
  u64 p = 0;
  unsigned m = 0;
};

/// (p, m) with q = p^m, or nothing if q is not a prime power.
inline std::optional<PrimePower> as_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  const auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return PrimePower{f[0].first, f[0].second};
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return r;
}

inline u64 mod_reduce(i128 a, u64 p) {
  const i128 r = a % static_cast<i128>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i128>(p) : r);
}

/// Legendre symbol (a/p) by Euler's criterion. Rejects p even or composite.
inline int legendre(i128 a, u64 p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: modulus must be an odd prime");
  const u64 r = mod_reduce(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Prime-power domains
// ---------------------------------------------------------------------------

enum class DomainKind { prime_powers, primes_only, naturals_from_2 };

inline std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::prime_powers: return "prime_powers";
    case DomainKind::primes_only: return "primes_only";
    case DomainKind::naturals_from_2: return "naturals_from_2";
  }
  return "?";
}

/// One index of a sequence. For naturals_from_2 the fields p and m are zero.
struct DomainEntry {
  u64 p = 0;
  unsigned m = 0;
  u64 q = 0;
  friend bool operator==(const DomainEntry&, const DomainEntry&) = default;
};

/// The index sets P^N_S (prime powers with p outside S), primes outside S,
/// and {2, ..., limit}, truncated at limit.
struct PrimePowerDomain {
  std::set<u64> excluded;
  DomainKind kind = DomainKind::prime_powers;
  u64 limit = 2;

  PrimePowerDomain() = default;
  PrimePowerDomain(std::set<u64> s, DomainKind k, u64 lim) : excluded(std::move(s)), kind(k), limit(lim) {
    validate();
  }

  void validate() const {
    if (limit < 2) throw std::invalid_argument("domain limit must be at least 2");
    for (u64 p : excluded) {
      if (!is_prime(p)) throw std::invalid_argument("excluded set contains non-prime " + std::to_string(p));
    }
  }

  [[nodiscard]] bool contains_prime(u64 p) const { return excluded.count(p) == 0; }
};

/// Ascending enumeration of the domain.
inline std::vector<DomainEntry> enumerate(const PrimePowerDomain& dom) {
  dom.validate();
  std::vector<DomainEntry> out;
  if (dom.kind == DomainKind::naturals_from_2) {
    out.reserve(dom.limit - 1);
    for (u64 n = 2; n <= dom.limit; ++n) out.push_back({0, 0, n});
    return out;
  }
  for (u64 p : primes_up_to(dom.limit)) {
    if (!dom.contains_prime(p)) continue;
    u64 q = p;
    unsigned m = 1;
    while (true) {
      out.push_back({p, m, q});
      if (dom.kind == DomainKind::primes_only || q > dom.limit / p) break;
      q *= p;
      ++m;
    }
  }
  std::sort(out.begin(), out.end(), [](const DomainEntry& a, const DomainEntry& b) { return a.q < b.q; });
  return out;
}

// ---------------------------------------------------------------------------
// Small finite fields F_{p^m}, p^m <= bound
// ---------------------------------------------------------------------------

inline constexpr u64 kDefaultFieldBound = 30000;

/// F_p[x]/(f) with f monic irreducible of degree m. Elements are encoded as
/// integers in [0, p^m) whose base-p digits are the coordinates (constant
/// term first).
class SmallField {
 public:
  using Element = std::uint32_t;

  [[nodiscard]] u64 characteristic() const { return p_; }
  [[nodiscard]] unsigned degree() const { return m_; }
  [[nodiscard]] u64 order() const { return q_; }
  /// Coefficients of the monic modulus, constant term first (size m+1).
  [[nodiscard]] const std::vector<u64>& modulus() const { return modulus_; }

  [[nodiscard]] Element zero() const { return 0; }
  [[nodiscard]] Element one() const { return 1; }

  /// Image of an integer under Z -> F_p -> F_q.
  [[nodiscard]] Element from_integer(i128 a) const { return static_cast<Element>(mod_reduce(a, p_)); }

  [[nodiscard]] std::vector<u64> coordinates(Element e) const {
    std::vector<u64> c(m_);
    for (unsigned i = 0; i < m_; ++i) {
      c[i] = e % p_;
      e = static_cast<Element>(e / p_);
    }
    return c;
  }

  [[nodiscard]] Element from_coordinates(const std::vector<u64>& c) const {
    u64 e = 0;
    for (unsigned i = m_; i-- > 0;) e = e * p_ + c[i] % p_;
    return static_cast<Element>(e);
  }

  [[nodiscard]] Element add(Element a, Element b) const {
    if (m_ == 1) return static_cast<Element>((u64(a) + b) % p_);
    u64 out = 0;
    u64 scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a = static_cast<Element>(a / p_);
      b = static_cast<Element>(b / p_);
      scale *= p_;
    }
    return static_cast<Element>(out);
  }

  [[nodiscard]] Element neg(Element a) const {
    if (m_ == 1) return static_cast<Element>((p_ - a) % p_);
    u64 out = 0;
    u64 scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
      out += ((p_ - a % p_) % p_) * scale;
      a = static_cast<Element>(a / p_);
      scale *= p_;
    }
    return static_cast<Element>(out);
  }

  [[nodiscard]] Element sub(Element a, Element b) const { return add(a, neg(b)); }

  [[nodiscard]] Element mul(Element a, Element b) const {
    if (m_ == 1) return static_cast<Element>(u64(a) * b % p_);
    u64 x[kMaxDegree];
    u64 y[kMaxDegree];
    u64 prod[2 * kMaxDegree] = {};
    for (unsigned i = 0; i < m_; ++i) {
      x[i] = a % p_;
      y[i] = b % p_;
      a = static_cast<Element>(a / p_);
      b = static_cast<Element>(b / p_);
    }
    for (unsigned i = 0; i < m_; ++i) {
      if (x[i] == 0) continue;
      for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    }
    // Reduce by the monic modulus from the top down.
    for (unsigned k = 2 * m_ - 1; k-- > m_;) {
      const u64 c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < m_; ++i) {
        prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - c) * modulus_[i]) % p_;
      }
    }
    u64 out = 0;
    for (unsigned i = m_; i-- > 0;) out = out * p_ + prod[i];
    return static_cast<Element>(out);
  }

  [[nodiscard]] Element pow(Element a, u64 e) const {
    Element r = one();
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }

  /// Multiplicative order of a nonzero element.
  [[nodiscard]] u64 multiplicative_order(Element a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative order");
    u64 k = 1;
    Element x = a;
    while (x != one()) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  static constexpr unsigned kMaxDegree = 16;

 private:
  friend SmallField build_field(u64 p, unsigned m, u64 bound);
  SmallField(u64 p, unsigned m, std::vector<u64> modulus)
      : p_(p), m_(m), q_(checked::pow(static_cast<i128>(p), m)), modulus_(std::move(modulus)) {}

  u64 p_;
  unsigned m_;
  u64 q_;
  std::vector<u64> modulus_;
};

namespace detail {

// Remainder of a modulo a monic b over F_p; coefficient vectors, constant first.
inline std::vector<u64> poly_mod(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    const u64 c = a[k] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = (a[k - db + i] + (p - c) * b[i]) % p;
  }
  a.resize(db);
  return a;
}

inline bool all_zero(const std::vector<u64>& v) {
  return std::all_of(v.begin(), v.end(), [](u64 c) { return c == 0; });
}

// Irreducible iff no monic factor of degree 1..m/2.
inline bool is_irreducible(const std::vector<u64>& f, u64 p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= m / 2; ++d) {
    const u64 count = static_cast<u64>(checked::pow(static_cast<i128>(p), d));
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> g(d + 1);
      u64 t = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (all_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace detail

/// F_{p^m} with the lexicographically first monic irreducible modulus.
inline SmallField build_field(u64 p, unsigned m, u64 bound = kDefaultFieldBound) {
  if (!is_prime(p)) throw std::invalid_argument("build_field: characteristic must be prime");
  if (m < 1 || m > SmallField::kMaxDegree) throw std::invalid_argument("build_field: unsupported degree");
  const i128 q = checked::pow(static_cast<i128>(p), m);
  if (q > static_cast<i128>(bound)) throw std::invalid_argument("build_field: field exceeds oracle bound");
  if (m == 1) return SmallField(p, 1, {0, 1});
  const u64 count = static_cast<u64>(q);
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<u64> f(m + 1);
    u64 t = idx;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[m] = 1;
    if (f[0] == 0) continue;
    if (detail::is_irreducible(f, p)) return SmallField(p, m, std::move(f));
  }
  throw std::logic_error("build_field: no irreducible polynomial found");
}

}  // namespace azeta
