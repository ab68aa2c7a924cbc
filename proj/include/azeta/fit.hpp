#pragma once

// Empirical ceiling/floor verification: a candidate f bounds a sequence A_n
// over a finite domain, attains it at enough witnesses, and (in Puiseux mode)
// has f(1) in Z. Comparisons of irrational f(n) with A_n are exact.

#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "azeta/arith.hpp"
#include "azeta/parallel.hpp"
#include "azeta/puiseux.hpp"

namespace azeta {

/// n -> A_n over a finite domain. The generator must be pure.
struct SequenceSource {
  std::string label;
  PrimePowerDomain domain;
  std::function<i128(const DomainEntry&)> generator;
};

/// A source evaluated once over its whole domain, ascending in n.
struct SampledSequence {
  std::string label;
  PrimePowerDomain domain;
  std::vector<DomainEntry> index;
  std::vector<i128> values;

  [[nodiscard]] std::size_t size() const { return index.size(); }
};

inline SampledSequence sample(const SequenceSource& src, unsigned threads = 0) {
  SampledSequence out{src.label, src.domain, enumerate(src.domain), {}};
  out.values.resize(out.index.size());
  parallel_for(out.index.size(), threads, [&](std::size_t i) { out.values[i] = src.generator(out.index[i]); });
  return out;
}

enum class VerdictStatus { verified, bound_violated, insufficient_witnesses, non_integral_at_one };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::verified: return "verified";
    case VerdictStatus::bound_violated: return "bound_violated";
    case VerdictStatus::insufficient_witnesses: return "insufficient_witnesses";
    case VerdictStatus::non_integral_at_one: return "non_integral_at_one";
  }
  return "?";
}

enum class BoundKind { ceiling, floor };

inline std::string to_string(BoundKind k) { return k == BoundKind::ceiling ? "ceiling" : "floor"; }

struct Violation {
  u64 n = 0;
  i128 value = 0;        // A_n
  i128 f_floor = 0;      // floor(f(n))
  i128 f_ceil = 0;       // ceil(f(n))
  std::string f_approx;  // decimal rendering of f(n), for reports
};

struct Verdict {
  VerdictStatus status = VerdictStatus::insufficient_witnesses;
  BoundKind kind = BoundKind::ceiling;
  bool puiseux_mode = false;
  std::string candidate;
  std::string label;
  std::set<u64> excluded;
  std::vector<u64> witnesses;
  std::optional<Violation> violation;
  u64 scanned_limit = 0;
  std::size_t scanned_count = 0;
  unsigned witness_threshold = 0;

  [[nodiscard]] bool verified() const { return status == VerdictStatus::verified; }
  [[nodiscard]] std::string summary() const;
};

namespace detail {

inline std::string approx_text(const PuiseuxPoly& f, u64 n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", approx_eval(f, static_cast<double>(n)));
  return buf;
}

struct PointCheck {
  bool violated = false;
  bool witness = false;
};

inline PointCheck check_point(const PuiseuxPoly& f, u64 n, i128 a, BoundKind kind, bool puiseux_mode) {
  PointCheck out;
  if (kind == BoundKind::ceiling) {
    // A_n <= f(n) iff A_n <= floor(f(n)).
    const i128 fl = floor_eval(f, n);
    out.violated = a > fl;
    if (fl == a) out.witness = puiseux_mode || ceil_eval(f, n) == a;
  } else {
    const i128 ce = ceil_eval(f, n);
    out.violated = a < ce;
    if (ce == a) out.witness = puiseux_mode || floor_eval(f, n) == a;
  }
  return out;
}

inline Verdict verify(const PuiseuxPoly& f, const SampledSequence& seq, unsigned threshold, bool puiseux_mode,
                      BoundKind kind, unsigned threads) {
  Verdict v;
  v.kind = kind;
  v.puiseux_mode = puiseux_mode;
  v.candidate = f.to_string();
  v.label = seq.label;
  v.excluded = seq.domain.excluded;
  v.scanned_limit = seq.domain.limit;
  v.witness_threshold = threshold;
  if (puiseux_mode && !value_at_one(f).is_integer) {
    v.status = VerdictStatus::non_integral_at_one;
    return v;
  }
  std::vector<PointCheck> checks(seq.size());
  parallel_for(seq.size(), threads, [&](std::size_t i) {
    checks[i] = check_point(f, seq.index[i].q, seq.values[i], kind, puiseux_mode);
  });
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const u64 n = seq.index[i].q;
    if (checks[i].violated) {
      v.violation = Violation{n, seq.values[i], floor_eval(f, n), ceil_eval(f, n), approx_text(f, n)};
      v.scanned_count = i + 1;
      v.status = VerdictStatus::bound_violated;
      return v;
    }
    if (checks[i].witness) v.witnesses.push_back(n);
  }
  v.scanned_count = seq.size();
  v.status = v.witnesses.size() >= threshold ? VerdictStatus::verified : VerdictStatus::insufficient_witnesses;
  return v;
}

}  // namespace detail

inline std::string Verdict::summary() const {
  std::ostringstream os;
  os << to_string(kind) << " " << candidate << " on " << label << ": " << to_string(status);
  if (violation) {
    os << " at n=" << violation->n << " (A_n=" << violation->value << ", f(n)~" << violation->f_approx << ")";
  } else if (status != VerdictStatus::non_integral_at_one) {
    os << " (" << witnesses.size() << " witnesses, threshold " << witness_threshold << ", limit " << scanned_limit
       << ")";
  }
  return os.str();
}

/// A_n <= f(n) on the whole domain, with >= threshold witnesses of equality
/// (floor(f(n)) = A_n in Puiseux mode, where f(1) must also be an integer).
inline Verdict verify_ceiling(const PuiseuxPoly& f, const SampledSequence& seq, unsigned threshold,
                              bool puiseux_mode, unsigned threads = 0) {
  return detail::verify(f, seq, threshold, puiseux_mode, BoundKind::ceiling, threads);
}

/// Dual of verify_ceiling; Puiseux witnesses satisfy ceil(f(n)) = A_n.
inline Verdict verify_floor(const PuiseuxPoly& f, const SampledSequence& seq, unsigned threshold, bool puiseux_mode,
                            unsigned threads = 0) {
  return detail::verify(f, seq, threshold, puiseux_mode, BoundKind::floor, threads);
}

inline Verdict verify_ceiling(const PuiseuxPoly& f, const SequenceSource& src, unsigned threshold, bool puiseux_mode,
                              unsigned threads = 0) {
  return verify_ceiling(f, sample(src, threads), threshold, puiseux_mode, threads);
}

inline Verdict verify_floor(const PuiseuxPoly& f, const SequenceSource& src, unsigned threshold, bool puiseux_mode,
                            unsigned threads = 0) {
  return verify_floor(f, sample(src, threads), threshold, puiseux_mode, threads);
}

/// Whether an independent rescan confirms a verified verdict: no violation at
/// any n and every listed witness is an equality.
inline bool recheck(const PuiseuxPoly& f, const SampledSequence& seq, const Verdict& v) {
  if (!v.verified()) return false;
  std::set<u64> witnesses(v.witnesses.begin(), v.witnesses.end());
  std::size_t found = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const u64 n = seq.index[i].q;
    const i128 a = seq.values[i];
    const i128 fl = floor_eval(f, n);
    const i128 ce = ceil_eval(f, n);
    if (v.kind == BoundKind::ceiling ? a > fl : a < ce) return false;
    if (witnesses.count(n) != 0) {
      const bool eq = v.puiseux_mode ? (v.kind == BoundKind::ceiling ? fl == a : ce == a) : (fl == a && ce == a);
      if (!eq) return false;
      ++found;
    }
  }
  return found == witnesses.size() && found >= v.witness_threshold;
}

// ---------------------------------------------------------------------------
// Linear family rejection
// ---------------------------------------------------------------------------

struct LinearCandidateReport {
  i128 c = 0;
  Verdict ceiling;
  Verdict floor;
};

/// Runs verify_ceiling and verify_floor for every f = t + c, c in [c_lo, c_hi].
inline std::vector<LinearCandidateReport> reject_linear_family(const SampledSequence& seq, i128 c_lo, i128 c_hi,
                                                               unsigned threshold, unsigned threads = 0) {
  if (seq.domain.kind == DomainKind::naturals_from_2) {
    throw std::invalid_argument("reject_linear_family: domain must be primes or prime powers");
  }
  std::vector<LinearCandidateReport> out;
  for (i128 c = c_lo; c <= c_hi; ++c) {
    const PuiseuxPoly f = PuiseuxPoly::t() + PuiseuxPoly::constant(Rational(c));
    out.push_back({c, verify_ceiling(f, seq, threshold, false, threads), verify_floor(f, seq, threshold, false, threads)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomial search
// ---------------------------------------------------------------------------

struct SearchReport {
  std::vector<Verdict> ceilings;
  std::vector<Verdict> floors;
  std::size_t candidates = 0;
  /// More than one verified candidate of a kind: the limit is too small to separate them.
  bool ceiling_ambiguous = false;
  bool floor_ambiguous = false;
};

/// Every integer polynomial of degree <= `degree` with coefficients in
/// [lo, hi] checked as ceiling and floor (ordinary-polynomial mode).
inline SearchReport search_polynomial(const SampledSequence& seq, unsigned degree, i64 lo, i64 hi, unsigned threshold,
                                      unsigned threads = 0) {
  if (degree > 3) throw std::invalid_argument("search_polynomial: degree must be at most 3");
  if (lo > hi) throw std::invalid_argument("search_polynomial: empty coefficient box");
  const auto width = static_cast<u64>(hi - lo + 1);
  u64 total = 1;
  for (unsigned k = 0; k <= degree; ++k) {
    if (total > 1'000'000 / width) throw std::invalid_argument("search_polynomial: box exceeds 10^6 candidates");
    total *= width;
  }
  // Integer Horner evaluation; none of the candidates needs interval work.
  struct Outcome {
    bool ceiling = false;
    bool floor = false;
  };
  std::vector<Outcome> outcome(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    std::vector<i128> coeff(degree + 1);  // coeff[k] multiplies t^k
    u64 rest = idx;
    for (unsigned k = 0; k <= degree; ++k) {
      coeff[k] = lo + static_cast<i64>(rest % width);
      rest /= width;
    }
    bool ceiling_ok = true;
    bool floor_ok = true;
    std::size_t ceiling_hits = 0;
    std::size_t floor_hits = 0;
    for (std::size_t i = 0; i < seq.size() && (ceiling_ok || floor_ok); ++i) {
      const auto n = static_cast<i128>(seq.index[i].q);
      i128 v = 0;
      for (unsigned k = degree + 1; k-- > 0;) v = checked::add(checked::mul(v, n), coeff[k]);
      const i128 a = seq.values[i];
      if (v < a) ceiling_ok = false;
      if (v > a) floor_ok = false;
      if (v == a) {
        ++ceiling_hits;
        ++floor_hits;
      }
    }
    outcome[idx] = {ceiling_ok && ceiling_hits >= threshold, floor_ok && floor_hits >= threshold};
  });
  SearchReport rep;
  rep.candidates = total;
  for (u64 idx = 0; idx < total; ++idx) {
    if (!outcome[idx].ceiling && !outcome[idx].floor) continue;
    PuiseuxPoly f;
    u64 rest = idx;
    for (unsigned k = 0; k <= degree; ++k) {
      f.add_term(Rational(lo + static_cast<i64>(rest % width)), Rational(static_cast<i128>(k)));
      rest /= width;
    }
    if (outcome[idx].ceiling) rep.ceilings.push_back(verify_ceiling(f, seq, threshold, false, 1));
    if (outcome[idx].floor) rep.floors.push_back(verify_floor(f, seq, threshold, false, 1));
  }
  rep.ceiling_ambiguous = rep.ceilings.size() > 1;
  rep.floor_ambiguous = rep.floors.size() > 1;
  return rep;
}

}  // namespace azeta
