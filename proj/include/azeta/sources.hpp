#pragma once

// Sequence sources for the fit engine, and the textual source specs used by
// the command line ("An:n=3", "Gn:n=5", "pell:delta=5", "curve:a=-1,b=0",
// "monoid:P1", "monoid-f1:P1").

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "azeta/elliptic.hpp"
#include "azeta/fit.hpp"
#include "azeta/monoid.hpp"
#include "azeta/schemes.hpp"

namespace azeta {

inline SequenceSource monoid_zlift_source(const MonoidScheme& X, const std::set<u64>& S, u64 limit,
                                          DomainKind kind = DomainKind::prime_powers) {
  return {"#" + X.label + "_Z(F_q)", PrimePowerDomain(S, kind, limit),
          [X](const DomainEntry& e) { return count_zlift(X, e.q); }};
}

/// n -> #X(F_{1^{n-1}}) over {2, ..., limit}.
inline SequenceSource monoid_f1_source(const MonoidScheme& X, u64 limit) {
  return {"#" + X.label + "(F_1^{n-1})", PrimePowerDomain({}, DomainKind::naturals_from_2, limit),
          [X](const DomainEntry& e) { return count_f1n(X, e.q - 1); }};
}

inline SequenceSource An_source(u64 n, const std::set<u64>& S, u64 limit, DomainKind kind = DomainKind::prime_powers) {
  return {"#A_" + std::to_string(n) + "(F_q)", PrimePowerDomain(S, kind, limit),
          [n](const DomainEntry& e) { return count_An(n, e.p, e.m); }};
}

inline SequenceSource Gn_source(u64 n, const std::set<u64>& S, u64 limit, DomainKind kind = DomainKind::prime_powers) {
  if (n < 2) throw std::invalid_argument("G_n requires n >= 2");
  return {"#G_" + std::to_string(n) + "(F_q)", PrimePowerDomain(S, kind, limit),
          [n](const DomainEntry& e) { return count_Gn(n, e.p, e.m); }};
}

inline SequenceSource pell_source(i64 delta, const std::set<u64>& S, u64 limit,
                                  DomainKind kind = DomainKind::prime_powers) {
  const PellConic C(delta);
  return {"#C^" + std::to_string(delta) + "(F_q)", PrimePowerDomain(S, kind, limit),
          [C](const DomainEntry& e) { return count_pell(C, e.p, e.m); }};
}

/// #E(F_q) over q outside S united with S_E.
inline SequenceSource elliptic_source(const EllipticCurve& E, std::set<u64> S, u64 limit,
                                      DomainKind kind = DomainKind::prime_powers) {
  S.insert(E.bad_primes().begin(), E.bad_primes().end());
  return {"#E(F_q) for " + E.label(), PrimePowerDomain(S, kind, limit),
          [E](const DomainEntry& e) { return count_extension(E, e.p, e.m); }};
}

namespace detail {

inline std::map<std::string, std::string> parse_kv(const std::string& body) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("source parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = item.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline i64 kv_int(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("source spec is missing '" + key + "'");
  return static_cast<i64>(parse_i128(it->second));
}

}  // namespace detail

/// A builtin model name (see models::by_name) or a path to a monoid JSON file.
inline MonoidScheme load_monoid(const std::string& name_or_path) {
  std::ifstream in(name_or_path);
  if (in) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("malformed monoid JSON in " + name_or_path + ": " + e.what());
    }
    return monoid_from_json(j);
  }
  return models::by_name(name_or_path);
}

/// Builds a source from "kind:params" with the given excluded set and limit.
inline SequenceSource parse_source(const std::string& spec, const std::set<u64>& S, u64 limit,
                                   DomainKind kind = DomainKind::prime_powers) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("source spec '" + spec + "' lacks ':'");
  const std::string head = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (head == "monoid") return monoid_zlift_source(load_monoid(body), S, limit, kind);
  if (head == "monoid-f1") return monoid_f1_source(load_monoid(body), limit);
  const auto kv = detail::parse_kv(body);
  if (head == "An") return An_source(static_cast<u64>(detail::kv_int(kv, "n")), S, limit, kind);
  if (head == "Gn") return Gn_source(static_cast<u64>(detail::kv_int(kv, "n")), S, limit, kind);
  if (head == "pell") return pell_source(detail::kv_int(kv, "delta"), S, limit, kind);
  if (head == "curve") return elliptic_source(EllipticCurve(detail::kv_int(kv, "a"), detail::kv_int(kv, "b")), S, limit, kind);
  throw std::invalid_argument("unknown source kind '" + head + "'");
}

}  // namespace azeta
