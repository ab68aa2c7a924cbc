#pragma once

// Elliptic curves y^2 = x^3 + a x + b over Q: point counts over F_p by
// character sums, over F_{p^m} by the trace recursion, local zeta factors,
// supersingular / champion / trailing classification and census sweeps.

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "azeta/arith.hpp"
#include "azeta/parallel.hpp"
#include "azeta/puiseux.hpp"

namespace azeta {

class EllipticCurve {
 public:
  EllipticCurve(i64 a, i64 b, std::string label = {}) : a_(a), b_(b), label_(std::move(label)) {
    if (discriminant() == 0) throw std::invalid_argument("singular Weierstrass equation (zero discriminant)");
    bad_primes_ = prime_divisors(discriminant());
    bad_primes_.insert(2);
    bad_primes_.insert(3);
    if (label_.empty()) label_ = default_label();
  }

  [[nodiscard]] i64 a() const { return a_; }
  [[nodiscard]] i64 b() const { return b_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  /// -16 (4 a^3 + 27 b^2).
  [[nodiscard]] i128 discriminant() const {
    const i128 a = a_;
    const i128 b = b_;
    return -16 * (4 * a * a * a + 27 * b * b);
  }

  /// S_E = {2, 3} and the primes dividing the discriminant.
  [[nodiscard]] const std::set<u64>& bad_primes() const { return bad_primes_; }
  [[nodiscard]] bool is_good(u64 p) const { return bad_primes_.count(p) == 0; }

 private:
  [[nodiscard]] std::string default_label() const {
    std::string s = "y2=x3";
    auto term = [&s](i64 c, const std::string& var) {
      if (c == 0) return;
      s += c < 0 ? "-" : "+";
      const i64 mag = c < 0 ? -c : c;
      if (mag != 1 || var.empty()) s += std::to_string(mag);
      s += var;
    };
    term(a_, "x");
    term(b_, "");
    return s;
  }

  i64 a_;
  i64 b_;
  std::string label_;
  std::set<u64> bad_primes_;
};

namespace detail {

inline void require_good(const EllipticCurve& E, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (!E.is_good(p)) {
    throw std::invalid_argument("p = " + std::to_string(p) + " lies in the bad set of " + E.label());
  }
}

}  // namespace detail

/// Frobenius trace a_p = -sum_x (x^3 + a x + b / p), via a quadratic-character table.
inline i64 trace_fp(const EllipticCurve& E, u64 p) {
  detail::require_good(E, p);
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  const u64 a = mod_reduce(E.a(), p);
  const u64 b = mod_reduce(E.b(), p);
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 v = (x * x % p * x + a * x + b) % p;
    sum += chi[v];
  }
  return -sum;
}

/// #E(F_p) = p + 1 + sum_x legendre(x^3 + a x + b, p).
inline i128 count_fp(const EllipticCurve& E, u64 p) { return static_cast<i128>(p) + 1 - trace_fp(E, p); }

/// Frobenius traces a_{p^m} from a_{p^0} = 2, a_{p^1} = a_p and
/// a_{p^m} = a_p a_{p^{m-1}} - p a_{p^{m-2}}.
struct TraceData {
  u64 p = 0;
  i64 a_p = 0;

  [[nodiscard]] i128 trace(unsigned m) const {
    i128 prev = 2;
    i128 cur = a_p;
    if (m == 0) return prev;
    for (unsigned k = 2; k <= m; ++k) {
      const i128 next = checked::sub(checked::mul(a_p, cur), checked::mul(static_cast<i128>(p), prev));
      prev = cur;
      cur = next;
    }
    return cur;
  }

  /// #E(F_{p^m}) = p^m + 1 - a_{p^m}.
  [[nodiscard]] i128 count(unsigned m) const {
    return checked::sub(checked::add(checked::pow(static_cast<i128>(p), m), 1), trace(m));
  }

  /// Hasse: a_p^2 <= 4p.
  [[nodiscard]] bool satisfies_hasse() const {
    return static_cast<i128>(a_p) * a_p <= 4 * static_cast<i128>(p);
  }
};

inline TraceData trace_data(const EllipticCurve& E, u64 p) { return {p, trace_fp(E, p)}; }

inline i128 count_extension(const EllipticCurve& E, u64 p, unsigned m) {
  if (m < 1) throw std::invalid_argument("count_extension: m must be positive");
  return trace_data(E, p).count(m);
}

inline bool is_supersingular(const EllipticCurve& E, u64 p) { return trace_fp(E, p) == 0; }

/// Z(E/F_p, T) = (1 - a_p T + p T^2) / ((1 - T)(1 - p T)).
struct LocalZeta {
  u64 p = 0;
  std::array<i128, 3> numerator{};  // 1, -a_p, p
  std::array<i128, 2> denominator_roots{};  // 1, p in (1 - T)(1 - p T)

  [[nodiscard]] bool is_supersingular_form() const { return numerator[1] == 0 && numerator[2] == static_cast<i128>(p); }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    os << "(1";
    if (numerator[1] != 0) os << (numerator[1] < 0 ? " - " : " + ") << azeta::to_string(abs128(numerator[1])) << "T";
    os << " + " << azeta::to_string(numerator[2]) << "T^2) / ((1 - T)(1 - " << p << "T))";
    return os.str();
  }
};

inline LocalZeta local_zeta(const EllipticCurve& E, u64 p) {
  const i64 ap = trace_fp(E, p);
  return {p, {1, -ap, static_cast<i128>(p)}, {1, static_cast<i128>(p)}};
}

// ---------------------------------------------------------------------------
// Champion / trailing / supersingular classification
// ---------------------------------------------------------------------------

enum class PrimeClass { champion, trailing, supersingular, other };

inline std::string to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::champion: return "champion";
    case PrimeClass::trailing: return "trailing";
    case PrimeClass::supersingular: return "supersingular";
    case PrimeClass::other: return "other";
  }
  return "?";
}

/// champion: #E(F_p) = p + 1 + floor(2 sqrt p), i.e. a_p = -isqrt(4p);
/// trailing: a_p = +isqrt(4p); supersingular: a_p = 0.
inline PrimeClass classify_trace(u64 p, i64 a_p) {
  const i128 bound = isqrt(4 * static_cast<i128>(p));
  if (a_p == 0) return PrimeClass::supersingular;
  if (a_p == -bound) return PrimeClass::champion;
  if (a_p == bound) return PrimeClass::trailing;
  return PrimeClass::other;
}

inline PrimeClass classify_prime(const EllipticCurve& E, u64 p) { return classify_trace(p, trace_fp(E, p)); }

/// Traces for a list of primes, computed in parallel blocks, in input order.
inline std::vector<i64> traces(const EllipticCurve& E, const std::vector<u64>& primes, unsigned threads = 0) {
  std::vector<i64> out(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) { out[i] = trace_fp(E, primes[i]); });
  return out;
}

struct CensusRow {
  u64 p = 0;
  i64 a_p = 0;
  PrimeClass cls = PrimeClass::other;
};

struct CensusReport {
  std::string label;
  u64 x_max = 0;
  std::set<u64> excluded;
  std::vector<CensusRow> rows;
  std::vector<u64> champions, trailing, supersingular;
  double main_term = 0;  // (2 / (3 pi)) x^{3/4} / log x
  double ratio_plus = 0;
  double ratio_minus = 0;
};

/// (2 / (3 pi)) x^{3/4} / log x.
inline double cm_extremal_main_term(double x) { return 2.0 / (3.0 * std::numbers::pi) * std::pow(x, 0.75) / std::log(x); }

/// Sweep of the good primes p <= x_max outside S (S is enlarged by S_E).
inline CensusReport census(const EllipticCurve& E, u64 x_max, std::set<u64> S, unsigned threads = 0) {
  if (x_max < 10) throw std::invalid_argument("census: x_max must be at least 10");
  S.insert(E.bad_primes().begin(), E.bad_primes().end());
  CensusReport rep;
  rep.label = E.label();
  rep.x_max = x_max;
  rep.excluded = S;
  std::vector<u64> primes;
  for (u64 p : primes_up_to(x_max)) {
    if (S.count(p) == 0) primes.push_back(p);
  }
  const auto tr = traces(E, primes, threads);
  rep.rows.reserve(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const PrimeClass c = classify_trace(primes[i], tr[i]);
    rep.rows.push_back({primes[i], tr[i], c});
    if (c == PrimeClass::champion) rep.champions.push_back(primes[i]);
    if (c == PrimeClass::trailing) rep.trailing.push_back(primes[i]);
    if (c == PrimeClass::supersingular) rep.supersingular.push_back(primes[i]);
  }
  rep.main_term = cm_extremal_main_term(static_cast<double>(x_max));
  rep.ratio_plus = static_cast<double>(rep.champions.size()) / rep.main_term;
  rep.ratio_minus = static_cast<double>(rep.trailing.size()) / rep.main_term;
  return rep;
}

// ---------------------------------------------------------------------------
// Maximal / minimal reductions
// ---------------------------------------------------------------------------

struct MaximalMinimalReport {
  u64 p = 0;
  unsigned k_max = 0;
  bool holds = true;
  /// First failing extension degree, if any.
  std::optional<unsigned> failed_degree;
  i128 expected = 0;
  i128 actual = 0;
};

/// For a supersingular p: #E(F_{p^{4k-2}}) = p^{4k-2} + 2p^{2k-1} + 1 and
/// #E(F_{p^{4k}}) = p^{4k} - 2p^{2k} + 1 for k = 1..k_max.
inline MaximalMinimalReport maximal_minimal_check(const EllipticCurve& E, u64 p, unsigned k_max) {
  const TraceData td = trace_data(E, p);
  if (td.a_p != 0) throw std::invalid_argument("maximal_minimal_check: p is not supersingular");
  MaximalMinimalReport rep;
  rep.p = p;
  rep.k_max = k_max;
  const auto P = static_cast<i128>(p);
  for (unsigned k = 1; k <= k_max; ++k) {
    const unsigned m_max = 4 * k - 2;
    const i128 want_max = checked::add(checked::add(checked::pow(P, m_max), 2 * checked::pow(P, 2 * k - 1)), 1);
    const i128 got_max = td.count(m_max);
    if (got_max != want_max) {
      rep.holds = false;
      rep.failed_degree = m_max;
      rep.expected = want_max;
      rep.actual = got_max;
      return rep;
    }
    const unsigned m_min = 4 * k;
    const i128 want_min = checked::add(checked::sub(checked::pow(P, m_min), 2 * checked::pow(P, 2 * k)), 1);
    const i128 got_min = td.count(m_min);
    if (got_min != want_min) {
      rep.holds = false;
      rep.failed_degree = m_min;
      rep.expected = want_min;
      rep.actual = got_min;
      return rep;
    }
  }
  return rep;
}

/// Whether #E(F_{p^2}) attains q + 2 sqrt q + 1 with q = p^2.
inline bool is_fp2_maximal(const EllipticCurve& E, u64 p) {
  const auto P = static_cast<i128>(p);
  return count_extension(E, p, 2) == P * P + 2 * P + 1;
}

// ---------------------------------------------------------------------------
// Hasse-Weil
// ---------------------------------------------------------------------------

struct HasseWeilBounds {
  PuiseuxPoly upper_candidate;  // t + 2g t^{1/2} + 1
  PuiseuxPoly lower_candidate;  // t - 2g t^{1/2} + 1
  double upper = 0;
  double lower = 0;
  i128 integer_lower = 0;
  i128 integer_upper = 0;
};

/// q - 2g sqrt q + 1 <= #C(F_q) <= q + 2g sqrt q + 1, and the integer hull.
inline HasseWeilBounds hasse_weil_bounds(u64 q, unsigned g) {
  if (!as_prime_power(q)) throw std::invalid_argument("hasse_weil_bounds: q must be a prime power");
  HasseWeilBounds out;
  const auto half = Rational(1, 2);
  const auto gg = static_cast<i128>(g);
  out.upper_candidate = PuiseuxPoly::t() + PuiseuxPoly::monomial(2 * gg, half) + PuiseuxPoly::constant(1);
  out.lower_candidate = PuiseuxPoly::t() + PuiseuxPoly::monomial(-2 * gg, half) + PuiseuxPoly::constant(1);
  const auto Q = static_cast<i128>(q);
  const i128 spread = isqrt(checked::mul(4 * gg * gg, Q));  // floor(2 g sqrt q)
  out.integer_upper = Q + spread + 1;
  out.integer_lower = Q - spread + 1;
  const double s = 2.0 * g * std::sqrt(static_cast<double>(q));
  out.upper = static_cast<double>(q) + s + 1;
  out.lower = static_cast<double>(q) - s + 1;
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures and CSV ingestion ("label,a,b" per line)
// ---------------------------------------------------------------------------

/// y^2 = x^3 - x, x^3 + x, x^3 + 1 (CM), x^3 - 2, x^3 - x + 1.
inline std::vector<EllipticCurve> fixture_curves() {
  return {EllipticCurve(-1, 0), EllipticCurve(1, 0), EllipticCurve(0, 1), EllipticCurve(0, -2),
          EllipticCurve(-1, 1)};
}

inline std::vector<EllipticCurve> cm_fixture_curves() {
  return {EllipticCurve(-1, 0), EllipticCurve(1, 0), EllipticCurve(0, 1)};
}

inline std::vector<EllipticCurve> read_curves_csv(std::istream& in) {
  std::vector<EllipticCurve> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + ": expected label,a,b");
    if (lineno == 1 && cells[0] == "label") continue;  // header
    try {
      out.emplace_back(static_cast<i64>(parse_i128(cells[1])), static_cast<i64>(parse_i128(cells[2])), cells[0]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace azeta
