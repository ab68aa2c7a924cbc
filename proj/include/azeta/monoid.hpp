#pragma once

// Finite monoid schemes described by the unit groups of their stalks,
// O_x^* = Z^r x Z/t_1 x ... x Z/t_l with t_j | t_{j+1}.

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "azeta/arith.hpp"
#include "azeta/puiseux.hpp"
#include "azeta/zeta.hpp"

namespace azeta {

/// Invariant factors t_1 | t_2 | ... of the direct sum of cyclic groups
/// Z/c_1 + Z/c_2 + ...; trivial factors are dropped.
inline std::vector<i64> invariant_factors(const std::vector<i64>& cyclic_orders) {
  std::map<u64, std::vector<unsigned>> by_prime;  // p -> exponents of p-parts
  for (i64 c : cyclic_orders) {
    if (c < 1) throw std::invalid_argument("cyclic group orders must be positive");
    for (auto [p, e] : factorize(static_cast<u64>(c))) by_prime[p].push_back(e);
  }
  std::size_t length = 0;
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    length = std::max(length, exps.size());
  }
  // The largest invariant factor takes the largest p-part of every prime.
  std::vector<i64> out(length, 1);
  for (const auto& [p, exps] : by_prime) {
    for (std::size_t i = 0; i < exps.size(); ++i) {
      out[length - 1 - i] = static_cast<i64>(checked::mul(out[length - 1 - i], checked::pow(static_cast<i128>(p), exps[i])));
    }
  }
  return out;
}

struct MonoidSchemePoint {
  unsigned rank = 0;
  std::vector<i64> torsion;  // divisibility chain, entries >= 2

  MonoidSchemePoint() = default;
  /// Strict constructor: torsion must already be a chain of entries >= 2.
  MonoidSchemePoint(unsigned r, std::vector<i64> chain) : rank(r), torsion(std::move(chain)) { validate(); }

  /// Accepts any list of cyclic orders (prime powers, 1s, unordered) and
  /// converts to the canonical divisibility chain.
  static MonoidSchemePoint from_cyclic(unsigned r, const std::vector<i64>& orders) {
    return {r, invariant_factors(orders)};
  }

  void validate() const {
    for (std::size_t j = 0; j < torsion.size(); ++j) {
      if (torsion[j] < 2) throw std::invalid_argument("torsion entries must be at least 2");
      if (j > 0 && torsion[j] % torsion[j - 1] != 0) {
        throw std::invalid_argument("torsion entries must form a divisibility chain");
      }
    }
  }

  /// T_x, the order of the torsion subgroup.
  [[nodiscard]] i128 torsion_order() const {
    i128 t = 1;
    for (i64 v : torsion) t = checked::mul(t, v);
    return t;
  }

  friend bool operator==(const MonoidSchemePoint&, const MonoidSchemePoint&) = default;
};

struct MonoidScheme {
  std::string label;
  std::vector<MonoidSchemePoint> points;

  /// R_X = max rank (0 when empty).
  [[nodiscard]] unsigned max_rank() const {
    unsigned r = 0;
    for (const auto& x : points) r = std::max(r, x.rank);
    return r;
  }

  /// T_X = product of the T_x.
  [[nodiscard]] i128 torsion_product() const {
    i128 t = 1;
    for (const auto& x : points) t = checked::mul(t, x.torsion_order());
    return t;
  }

  friend bool operator==(const MonoidScheme&, const MonoidScheme&) = default;
};

// ---------------------------------------------------------------------------
// Point counts
// ---------------------------------------------------------------------------

/// #X(F_{1^n}) = sum_x n^{r_x} prod_j gcd(n, t_{x,j}).
inline i128 count_f1n(const MonoidScheme& X, u64 n) {
  if (n < 1) throw std::invalid_argument("count_f1n: n must be positive");
  i128 total = 0;
  for (const auto& x : X.points) {
    i128 term = checked::pow(static_cast<i128>(n), x.rank);
    for (i64 t : x.torsion) term = checked::mul(term, gcd128(static_cast<i128>(n), t));
    total = checked::add(total, term);
  }
  return total;
}

/// #X_Z(F_q) = #X(F_{1^{q-1}}) for a prime power q.
inline i128 count_zlift(const MonoidScheme& X, u64 q) {
  if (!as_prime_power(q)) throw std::invalid_argument("count_zlift: " + std::to_string(q) + " is not a prime power");
  return count_f1n(X, q - 1);
}

// ---------------------------------------------------------------------------
// Envelopes and zeta products
// ---------------------------------------------------------------------------

/// sum_x T_x (t - 1)^{r_x}.
inline PuiseuxPoly ceiling_poly(const MonoidScheme& X) {
  PuiseuxPoly f;
  for (const auto& x : X.points) f += expand_binomial(x.torsion_order(), x.rank);
  return f;
}

/// T_{x,S} = prod_j 2^{e_{x,j,S}}, e = 1 iff 2 | t_{x,j} and 2 in S.
inline i128 torsion_order_away_from(const MonoidSchemePoint& x, const std::set<u64>& S) {
  if (S.count(2) == 0) return 1;
  i128 t = 1;
  for (i64 v : x.torsion) {
    if (v % 2 == 0) t *= 2;
  }
  return t;
}

/// sum_x T_{x,S} (t - 1)^{r_x}.
inline PuiseuxPoly floor_poly(const MonoidScheme& X, const std::set<u64>& S) {
  PuiseuxPoly f;
  for (const auto& x : X.points) f += expand_binomial(torsion_order_away_from(x, S), x.rank);
  return f;
}

namespace detail {

// prod_{k=0}^{R} (s - k)^{sum_x w_x (-1)^{r_x - k + 1} C(r_x, k)}
template <typename Weight>
FormalProduct binomial_zeta(const MonoidScheme& X, Weight weight) {
  FormalProduct z;
  for (const auto& x : X.points) {
    const i128 w = weight(x);
    i128 binom = 1;
    for (unsigned k = 0; k <= x.rank; ++k) {
      const i128 sign = ((x.rank - k + 1) % 2 == 0) ? 1 : -1;
      z.multiply_factor(Rational(static_cast<i128>(k)), Rational(checked::mul(checked::mul(w, sign), binom)));
      binom = checked::mul(binom, x.rank - k) / (k + 1);
    }
  }
  return z;
}

}  // namespace detail

/// Zeta of the ceiling polynomial from the closed-form exponents.
inline FormalProduct zeta_product(const MonoidScheme& X) {
  return detail::binomial_zeta(X, [](const MonoidSchemePoint& x) { return x.torsion_order(); });
}

inline FormalProduct zeta_floor_product(const MonoidScheme& X, const std::set<u64>& S) {
  return detail::binomial_zeta(X, [&S](const MonoidSchemePoint& x) { return torsion_order_away_from(x, S); });
}

struct EnvelopePair {
  PuiseuxPoly ceiling;
  PuiseuxPoly floor;
  friend bool operator==(const EnvelopePair&, const EnvelopePair&) = default;
};

/// Ceiling/floor of (#X(F_{1^{n-1}}))_{n >= 2}: all T_x replaced by 1 for the floor.
inline EnvelopePair f1_ceiling_floor(const MonoidScheme& X) {
  EnvelopePair out;
  out.ceiling = ceiling_poly(X);
  for (const auto& x : X.points) out.floor += expand_binomial(1, x.rank);
  return out;
}

/// Ceiling/floor Puiseux polynomials of the generic fibre X_Q.
inline EnvelopePair qfiber_ceiling_floor(const MonoidScheme& X) { return {ceiling_poly(X), floor_poly(X, {2})}; }

// ---------------------------------------------------------------------------
// Model library
// ---------------------------------------------------------------------------

namespace models {

inline i128 binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  i128 b = 1;
  for (unsigned i = 0; i < k; ++i) b = checked::mul(b, n - i) / (i + 1);
  return b;
}

/// A^n: C(n, k) points of rank k.
inline MonoidScheme affine_space(unsigned n) {
  MonoidScheme X{"A" + std::to_string(n), {}};
  for (unsigned k = 0; k <= n; ++k) {
    for (i128 i = 0; i < binomial(n, k); ++i) X.points.push_back({k, {}});
  }
  return X;
}

/// G_m^n: a single point of rank n.
inline MonoidScheme torus(unsigned n) { return {n == 1 ? "Gm" : "Gm" + std::to_string(n), {{n, {}}}}; }

/// P^n: C(n+1, k+1) points of rank k.
inline MonoidScheme projective_space(unsigned n) {
  MonoidScheme X{"P" + std::to_string(n), {}};
  for (unsigned k = 0; k <= n; ++k) {
    for (i128 i = 0; i < binomial(n + 1, k + 1); ++i) X.points.push_back({k, {}});
  }
  return X;
}

/// spec F_{1^n}: one point with unit group Z/n.
inline MonoidScheme spec_f1n(i64 n) {
  if (n < 1) throw std::invalid_argument("spec_f1n: n must be positive");
  return {"F1^" + std::to_string(n), {MonoidSchemePoint::from_cyclic(0, {n})}};
}

inline MonoidScheme disjoint_union(const MonoidScheme& X, const MonoidScheme& Y) {
  MonoidScheme out{X.label + "+" + Y.label, X.points};
  out.points.insert(out.points.end(), Y.points.begin(), Y.points.end());
  return out;
}

/// Points are pairs; ranks add and the torsion parts form a direct sum.
inline MonoidScheme product(const MonoidScheme& X, const MonoidScheme& Y) {
  MonoidScheme out{X.label + "x" + Y.label, {}};
  for (const auto& x : X.points) {
    for (const auto& y : Y.points) {
      std::vector<i64> orders = x.torsion;
      orders.insert(orders.end(), y.torsion.begin(), y.torsion.end());
      out.points.push_back(MonoidSchemePoint::from_cyclic(x.rank + y.rank, orders));
    }
  }
  return out;
}

/// Built-in names: "A<n>", "P<n>", "Gm", "Gm<n>", "F1^<n>".
inline MonoidScheme by_name(const std::string& name) {
  auto number = [&](std::size_t from) {
    const std::string digits = name.substr(from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw std::invalid_argument("unknown monoid model '" + name + "'");
    }
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (name.rfind("F1^", 0) == 0) return spec_f1n(number(3));
  if (name == "Gm") return torus(1);
  if (name.rfind("Gm", 0) == 0) return torus(number(2));
  if (name.rfind('A', 0) == 0) return affine_space(number(1));
  if (name.rfind('P', 0) == 0) return projective_space(number(1));
  throw std::invalid_argument("unknown monoid model '" + name + "'");
}

}  // namespace models

// ---------------------------------------------------------------------------
// JSON: {"label": str, "points": [{"r": int, "torsion": [int, ...]}, ...]}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const MonoidScheme& X) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& x : X.points) pts.push_back({{"r", x.rank}, {"torsion", x.torsion}});
  return {{"label", X.label}, {"points", pts}};
}

/// Torsion lists in any cyclic decomposition are canonicalised.
inline MonoidScheme monoid_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw std::invalid_argument("monoid JSON must be an object with a 'points' array");
  }
  MonoidScheme X;
  X.label = j.value("label", std::string{});
  for (const auto& p : j["points"]) {
    if (!p.contains("r") || !p["r"].is_number_integer() || p["r"].get<long long>() < 0) {
      throw std::invalid_argument("each point needs a non-negative integer 'r'");
    }
    std::vector<i64> orders;
    if (p.contains("torsion")) {
      if (!p["torsion"].is_array()) throw std::invalid_argument("'torsion' must be an array");
      for (const auto& t : p["torsion"]) {
        if (!t.is_number_integer() || t.get<long long>() < 1) {
          throw std::invalid_argument("torsion entries must be positive integers");
        }
        orders.push_back(t.get<i64>());
      }
    }
    X.points.push_back(MonoidSchemePoint::from_cyclic(p["r"].get<unsigned>(), orders));
  }
  return X;
}

}  // namespace azeta
