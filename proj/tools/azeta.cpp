// azeta: point counts, ceiling/floor envelopes and absolute zeta functions
// from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "azeta/acceptance.hpp"
#include "azeta/elliptic.hpp"
#include "azeta/fit.hpp"
#include "azeta/monoid.hpp"
#include "azeta/schemes.hpp"
#include "azeta/sources.hpp"
#include "azeta/zeta.hpp"

using namespace azeta;
using nlohmann::json;

namespace {

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::set<u64> parse_primes(const std::string& list) {
  std::set<u64> out;
  if (list.empty()) return out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const i128 v = parse_i128(item);
    if (v < 2 || !is_prime(static_cast<u64>(v))) throw Usage("excluded entry '" + item + "' is not a prime");
    out.insert(static_cast<u64>(v));
  }
  return out;
}

std::string join(const std::set<u64>& s) {
  std::string out;
  for (u64 p : s) out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)},
         {"mode", to_string(v.kind)},
         {"puiseux", v.puiseux_mode},
         {"candidate", v.candidate},
         {"source", v.label},
         {"excluded", std::vector<u64>(v.excluded.begin(), v.excluded.end())},
         {"scanned_limit", v.scanned_limit},
         {"witness_threshold", v.witness_threshold},
         {"witnesses", v.witnesses}};
  if (v.violation) {
    j["violation"] = {{"n", v.violation->n},
                      {"A_n", to_string(v.violation->value)},
                      {"floor_f", to_string(v.violation->f_floor)},
                      {"ceil_f", to_string(v.violation->f_ceil)},
                      {"f_approx", v.violation->f_approx}};
  }
  return j;
}

int exit_code(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::verified: return 0;
    case VerdictStatus::bound_violated: return 2;
    case VerdictStatus::insufficient_witnesses: return 3;
    case VerdictStatus::non_integral_at_one: return 4;
  }
  return 1;
}

void print_verdict(const Verdict& v, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(v).dump(2) << "\n";
    return;
  }
  std::cout << "status: " << to_string(v.status) << "\n"
            << "mode: " << to_string(v.kind) << (v.puiseux_mode ? " (puiseux)" : "") << "\n"
            << "candidate: " << v.candidate << "\n"
            << "source: " << v.label << "\n"
            << "excluded: {" << join(v.excluded) << "}\n"
            << "limit: " << v.scanned_limit << "\n"
            << "witnesses (" << v.witnesses.size() << ", threshold " << v.witness_threshold << "):";
  std::size_t shown = 0;
  for (u64 w : v.witnesses) {
    if (shown++ == 20) {
      std::cout << " ...";
      break;
    }
    std::cout << " " << w;
  }
  std::cout << "\n";
  if (v.violation) {
    std::cout << "violation: n=" << v.violation->n << " A_n=" << v.violation->value << " f(n)~" << v.violation->f_approx
              << " floor=" << v.violation->f_floor << " ceil=" << v.violation->f_ceil << "\n";
  }
}

EllipticCurve select_curve(const std::string& in, const std::string& label, const std::optional<i64>& a,
                           const std::optional<i64>& b) {
  if (a || b) {
    if (!a || !b) throw Usage("both --a and --b are required");
    return EllipticCurve(*a, *b);
  }
  if (in.empty()) throw Usage("give --in <curves.csv> or --a/--b");
  std::ifstream f(in);
  if (!f) throw Usage("cannot open " + in);
  const auto curves = read_curves_csv(f);
  if (curves.empty()) throw Usage(in + " lists no curves");
  if (label.empty()) {
    if (curves.size() > 1) throw Usage(in + " lists several curves; pick one with --label");
    return curves.front();
  }
  for (const auto& c : curves) {
    if (c.label() == label) return c;
  }
  throw Usage("no curve labelled '" + label + "' in " + in);
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts, ceiling/floor polynomials and absolute zeta functions"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: AZW_THREADS or all cores)");

  // ---- monoid -------------------------------------------------------------
  auto* monoid = app.add_subcommand("monoid", "monoid schemes: counts, envelopes, zeta products");
  std::string monoid_in, monoid_model, monoid_exclude, monoid_format = "plain";
  u64 monoid_limit = 100;
  bool monoid_f1 = false;
  monoid->add_option("--in", monoid_in, "monoid JSON file");
  monoid->add_option("--model", monoid_model, "builtin model: A<n>, P<n>, Gm, Gm<n>, F1^<n>");
  monoid->require_subcommand(1);
  auto* monoid_counts = monoid->add_subcommand("counts", "#X_Z(F_q) over prime powers, or #X(F_1^n) with --f1");
  monoid_counts->add_option("--limit", monoid_limit, "largest q (or n)")->check(CLI::PositiveNumber);
  monoid_counts->add_option("--exclude", monoid_exclude, "excluded primes, comma separated");
  monoid_counts->add_flag("--f1", monoid_f1, "count over F_{1^n}, n = 1..limit");
  monoid_counts->add_option("--format", monoid_format)->check(CLI::IsMember({"plain", "csv", "json"}));
  auto* monoid_env = monoid->add_subcommand("envelopes", "ceiling and floor polynomials");
  monoid_env->add_option("--exclude", monoid_exclude, "the set S of inverted primes");
  monoid_env->add_flag("--f1", monoid_f1, "envelopes of n -> #X(F_{1^{n-1}})");
  monoid_env->add_option("--format", monoid_format)->check(CLI::IsMember({"plain", "json"}));
  auto* monoid_zeta = monoid->add_subcommand("zeta", "zeta products of the ceiling and floor");
  monoid_zeta->add_option("--exclude", monoid_exclude, "the set S of inverted primes");

  // ---- family -------------------------------------------------------------
  auto* family = app.add_subcommand("family", "punctured lines A_n, punctured tori G_n, Pell conics");
  std::string family_kind, family_exclude, family_format = "plain";
  u64 family_n = 2, family_limit = 100;
  i64 family_delta = 5;
  family->add_option("kind", family_kind, "An, Gn or pell")->required()->check(CLI::IsMember({"An", "Gn", "pell"}));
  family->add_option("--n", family_n, "n for A_n / G_n");
  family->add_option("--delta", family_delta, "Pell discriminant");
  family->add_option("--limit", family_limit, "largest q")->check(CLI::Range(u64{2}, u64{1} << 40));
  family->add_option("--exclude", family_exclude, "excluded primes");
  family->add_option("--format", family_format)->check(CLI::IsMember({"plain", "csv", "json"}));

  // ---- curve --------------------------------------------------------------
  auto* curve = app.add_subcommand("curve", "elliptic curves y^2 = x^3 + a x + b");
  std::string curve_in, curve_label, curve_exclude, curve_out = "census";
  std::optional<i64> curve_a, curve_b;
  u64 curve_p = 5, curve_xmax = 1000;
  unsigned curve_m = 1;
  curve->add_option("--in", curve_in, "curve CSV (label,a,b)");
  curve->add_option("--label", curve_label, "curve label within --in");
  curve->add_option("--a", curve_a);
  curve->add_option("--b", curve_b);
  curve->require_subcommand(1);
  auto* curve_count = curve->add_subcommand("count", "#E(F_{p^m}), a_p and the local zeta function");
  curve_count->add_option("--p", curve_p)->required();
  curve_count->add_option("--m", curve_m)->check(CLI::PositiveNumber);
  auto* curve_classify = curve->add_subcommand("classify", "champion/trailing/supersingular primes up to --xmax");
  curve_classify->add_option("--xmax", curve_xmax)->check(CLI::Range(u64{10}, u64{100000000}));
  curve_classify->add_option("--exclude", curve_exclude);
  auto* curve_census = curve->add_subcommand("census", "writes <out>.csv (p,a_p,class) and <out>.json");
  curve_census->add_option("--xmax", curve_xmax)->check(CLI::Range(u64{10}, u64{100000000}));
  curve_census->add_option("--exclude", curve_exclude);
  curve_census->add_option("--out", curve_out, "output prefix (default: census)");

  // ---- fit ----------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "empirical ceiling/floor verification");
  std::string fit_source, fit_exclude, fit_candidate, fit_mode = "ceiling", fit_format = "plain";
  u64 fit_limit = 10000;
  unsigned fit_witnesses = 3, fit_degree = 1;
  bool fit_puiseux = false, fit_primes_only = false;
  std::vector<i64> fit_box{-5, 5};
  i64 fit_cmin = 0, fit_cmax = 20;
  fit->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--source", fit_source, "An:n=3 | Gn:n=5 | pell:delta=5 | curve:a=-1,b=0 | monoid:<file|name> | monoid-f1:<file|name>")
        ->required();
    sub->add_option("--limit", fit_limit)->check(CLI::Range(u64{2}, u64{1} << 40));
    sub->add_option("--witnesses", fit_witnesses);
    sub->add_option("--exclude", fit_exclude, "excluded primes");
    sub->add_flag("--primes-only", fit_primes_only, "restrict the domain to primes");
    sub->add_option("--format", fit_format)->check(CLI::IsMember({"plain", "json"}));
  };
  auto* fit_verify = fit->add_subcommand("verify", "check one candidate");
  add_common(fit_verify);
  fit_verify->add_option("--mode", fit_mode)->check(CLI::IsMember({"ceiling", "floor"}));
  fit_verify->add_flag("--puiseux", fit_puiseux, "Puiseux semantics: floor/ceil equality and f(1) in Z");
  fit_verify->add_option("--candidate", fit_candidate)->required();
  auto* fit_search = fit->add_subcommand("search", "exhaustive integer-coefficient search");
  add_common(fit_search);
  fit_search->add_option("--degree", fit_degree)->check(CLI::Range(0, 3));
  fit_search->add_option("--box", fit_box, "coefficient range lo hi")->expected(2);
  auto* fit_reject = fit->add_subcommand("reject-linear", "test t + c for c in [c-min, c-max]");
  add_common(fit_reject);
  fit_reject->add_option("--c-min", fit_cmin);
  fit_reject->add_option("--c-max", fit_cmax);

  // ---- zeta ---------------------------------------------------------------
  auto* zeta = app.add_subcommand("zeta", "formal products prod (s - rho)^m");
  zeta->require_subcommand(1);
  std::string zeta_a, zeta_b, zeta_d = "1";
  auto* zeta_soule = zeta->add_subcommand("soule", "Puiseux polynomial -> absolute zeta function");
  zeta_soule->add_option("poly", zeta_a)->required();
  auto* zeta_tensor = zeta->add_subcommand("tensor", "modified Kurokawa tensor product");
  zeta_tensor->add_option("z1", zeta_a)->required();
  zeta_tensor->add_option("z2", zeta_b)->required();
  auto* zeta_reflect = zeta->add_subcommand("reflect", "Z(d - s)");
  zeta_reflect->add_option("z", zeta_a)->required();
  zeta_reflect->add_option("--d", zeta_d);
  auto* zeta_funceq = zeta->add_subcommand("funceq", "is Z(d - s) = +-Z(s)?");
  zeta_funceq->add_option("z", zeta_a)->required();
  zeta_funceq->add_option("--d", zeta_d);

  // ---- repro --------------------------------------------------------------
  auto* repro = app.add_subcommand("repro", "run the reproducibility suite");
  bool repro_timings = false;
  repro->add_flag("--timings", repro_timings, "append wall-clock times (output no longer byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*monoid) {
      if (monoid_in.empty() == monoid_model.empty()) throw Usage("give exactly one of --in and --model");
      const MonoidScheme X = load_monoid(monoid_in.empty() ? monoid_model : monoid_in);
      if (*monoid_counts) {
        const auto src = monoid_f1 ? monoid_f1_source(X, monoid_limit + 1)
                                   : monoid_zlift_source(X, parse_primes(monoid_exclude), std::max<u64>(monoid_limit, 2));
        const auto seq = sample(src, threads);
        const char* key = monoid_f1 ? "n" : "q";
        if (monoid_format == "json") {
          json rows = json::array();
          for (std::size_t i = 0; i < seq.size(); ++i) {
            rows.push_back({{key, monoid_f1 ? seq.index[i].q - 1 : seq.index[i].q}, {"count", to_string(seq.values[i])}});
          }
          std::cout << json{{"label", X.label}, {"counts", rows}}.dump(2) << "\n";
        } else {
          const bool csv = monoid_format == "csv";
          if (csv) std::cout << (monoid_f1 ? "n,count\n" : "p,m,q,count\n");
          for (std::size_t i = 0; i < seq.size(); ++i) {
            const auto& e = seq.index[i];
            if (monoid_f1) {
              std::cout << e.q - 1 << (csv ? "," : " ") << seq.values[i] << "\n";
            } else if (csv) {
              std::cout << e.p << "," << e.m << "," << e.q << "," << seq.values[i] << "\n";
            } else {
              std::cout << e.q << " " << seq.values[i] << "\n";
            }
          }
        }
      } else if (*monoid_env) {
        const auto S = parse_primes(monoid_exclude);
        const EnvelopePair env = monoid_f1 ? f1_ceiling_floor(X) : EnvelopePair{ceiling_poly(X), floor_poly(X, S)};
        if (monoid_format == "json") {
          std::cout << json{{"ceiling", env.ceiling.to_string()}, {"floor", env.floor.to_string()}}.dump(2) << "\n";
        } else {
          std::cout << "ceiling: " << env.ceiling.to_string() << "\nfloor: " << env.floor.to_string() << "\n";
        }
      } else {
        const auto S = parse_primes(monoid_exclude);
        std::cout << "ceiling zeta: " << zeta_product(X).to_string() << "\n"
                  << "floor zeta: " << zeta_floor_product(X, S).to_string() << "\n";
      }
      return 0;
    }

    if (*family) {
      const auto S = parse_primes(family_exclude);
      SequenceSource src;
      EnvelopePair env;
      if (family_kind == "An") {
        src = An_source(family_n, S, family_limit);
        env = envelopes_An(family_n, S);
      } else if (family_kind == "Gn") {
        src = Gn_source(family_n, S, family_limit);
        env = envelopes_Gn(family_n, S);
      } else {
        src = pell_source(family_delta, S, family_limit);
        env = envelopes_pell(PellConic(family_delta), S);
      }
      const auto seq = sample(src, threads);
      if (family_format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < seq.size(); ++i) rows.push_back({{"q", seq.index[i].q}, {"count", to_string(seq.values[i])}});
        std::cout << json{{"source", seq.label},
                          {"excluded", std::vector<u64>(S.begin(), S.end())},
                          {"ceiling", env.ceiling.to_string()},
                          {"floor", env.floor.to_string()},
                          {"counts", rows}}
                         .dump(2)
                  << "\n";
      } else if (family_format == "csv") {
        std::cout << "p,m,q,count\n";
        for (std::size_t i = 0; i < seq.size(); ++i) {
          const auto& e = seq.index[i];
          std::cout << e.p << "," << e.m << "," << e.q << "," << seq.values[i] << "\n";
        }
      } else {
        std::cout << seq.label << ", S = {" << join(S) << "}\nceiling: " << env.ceiling.to_string()
                  << "\nfloor: " << env.floor.to_string() << "\n";
        for (std::size_t i = 0; i < seq.size(); ++i) std::cout << seq.index[i].q << " " << seq.values[i] << "\n";
      }
      return 0;
    }

    if (*curve) {
      const EllipticCurve E = select_curve(curve_in, curve_label, curve_a, curve_b);
      if (*curve_count) {
        const TraceData td = trace_data(E, curve_p);
        std::cout << E.label() << " over F_" << curve_p << (curve_m > 1 ? "^" + std::to_string(curve_m) : "") << "\n"
                  << "a_p: " << td.a_p << "\n"
                  << "count: " << td.count(curve_m) << "\n"
                  << "class: " << to_string(classify_trace(curve_p, td.a_p)) << "\n"
                  << "local zeta: " << local_zeta(E, curve_p).to_string() << "\n";
        return 0;
      }
      const auto rep = census(E, curve_xmax, parse_primes(curve_exclude), threads);
      json summary{{"label", rep.label},
                   {"x_max", rep.x_max},
                   {"excluded", std::vector<u64>(rep.excluded.begin(), rep.excluded.end())},
                   {"counts",
                    {{"champion", rep.champions.size()},
                     {"trailing", rep.trailing.size()},
                     {"supersingular", rep.supersingular.size()}}},
                   {"main_term", rep.main_term},
                   {"ratio_plus", rep.ratio_plus},
                   {"ratio_minus", rep.ratio_minus}};
      if (*curve_classify) {
        for (const auto& row : rep.rows) {
          if (row.cls != PrimeClass::other) std::cout << row.p << " " << row.a_p << " " << to_string(row.cls) << "\n";
        }
        std::cout << summary.dump() << "\n";
        return 0;
      }
      const std::string prefix = curve_out.empty() ? "census_" + sanitize(E.label()) : curve_out;
      std::ofstream csv(prefix + ".csv");
      std::ofstream js(prefix + ".json");
      if (!csv || !js) throw Usage("cannot write " + prefix + ".csv/.json");
      csv << "p,a_p,class\n";
      for (const auto& row : rep.rows) csv << row.p << "," << row.a_p << "," << to_string(row.cls) << "\n";
      js << summary.dump(2) << "\n";
      std::cout << summary.dump(2) << "\n";
      return 0;
    }

    if (*fit) {
      const auto kind = fit_primes_only ? DomainKind::primes_only : DomainKind::prime_powers;
      const auto src = parse_source(fit_source, parse_primes(fit_exclude), fit_limit, kind);
      const auto seq = sample(src, threads);
      if (*fit_verify) {
        const auto f = PuiseuxPoly::parse(fit_candidate);
        const Verdict v = fit_mode == "ceiling" ? verify_ceiling(f, seq, fit_witnesses, fit_puiseux, threads)
                                                : verify_floor(f, seq, fit_witnesses, fit_puiseux, threads);
        print_verdict(v, fit_format);
        return exit_code(v);
      }
      if (*fit_search) {
        const auto rep = search_polynomial(seq, fit_degree, fit_box[0], fit_box[1], fit_witnesses, threads);
        if (fit_format == "json") {
          json c = json::array(), f = json::array();
          for (const auto& v : rep.ceilings) c.push_back(to_json(v));
          for (const auto& v : rep.floors) f.push_back(to_json(v));
          std::cout << json{{"candidates", rep.candidates}, {"ceilings", c}, {"floors", f},
                            {"ceiling_ambiguous", rep.ceiling_ambiguous}, {"floor_ambiguous", rep.floor_ambiguous}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << "searched " << rep.candidates << " candidates on " << seq.label << " (limit " << fit_limit << ")\n";
          for (const auto& v : rep.ceilings) std::cout << "ceiling: " << v.candidate << " (" << v.witnesses.size() << " witnesses)\n";
          for (const auto& v : rep.floors) std::cout << "floor: " << v.candidate << " (" << v.witnesses.size() << " witnesses)\n";
          if (rep.ceilings.empty()) std::cout << "ceiling: none\n";
          if (rep.floors.empty()) std::cout << "floor: none\n";
          if (rep.ceiling_ambiguous || rep.floor_ambiguous) std::cout << "warning: several candidates verified; raise --limit\n";
        }
        return 0;
      }
      const auto rows = reject_linear_family(seq, fit_cmin, fit_cmax, fit_witnesses, threads);
      if (fit_format == "json") {
        json out = json::array();
        for (const auto& r : rows) out.push_back({{"c", to_string(r.c)}, {"ceiling", to_json(r.ceiling)}, {"floor", to_json(r.floor)}});
        std::cout << out.dump(2) << "\n";
      } else {
        auto brief = [](const Verdict& v) {
          std::string s = to_string(v.status);
          if (v.violation) s += " at " + std::to_string(v.violation->n) + " (A=" + to_string(v.violation->value) + ")";
          if (v.status == VerdictStatus::verified || v.status == VerdictStatus::insufficient_witnesses) {
            s += " (" + std::to_string(v.witnesses.size()) + " witnesses)";
          }
          return s;
        };
        std::cout << "c,ceiling,floor\n";
        for (const auto& r : rows) std::cout << r.c << "," << brief(r.ceiling) << "," << brief(r.floor) << "\n";
      }
      return 0;
    }

    if (*zeta) {
      if (*zeta_soule) {
        std::cout << soule_zeta(PuiseuxPoly::parse(zeta_a)).to_string() << "\n";
      } else if (*zeta_tensor) {
        std::cout << tensor(FormalProduct::parse(zeta_a), FormalProduct::parse(zeta_b)).to_string() << "\n";
      } else if (*zeta_reflect) {
        const auto r = reflect(FormalProduct::parse(zeta_a), Rational::parse(zeta_d));
        std::cout << "sign: " << (r.sign ? std::to_string(*r.sign) : std::string("undefined")) << "\n"
                  << "product: " << r.product.to_string() << "\n";
      } else {
        const auto fe = check_functional_equation(FormalProduct::parse(zeta_a), Rational::parse(zeta_d));
        std::cout << "symmetric: " << (fe.symmetric ? "yes" : "no") << "\n";
        if (fe.symmetric) std::cout << "sign: " << (fe.sign ? std::to_string(*fe.sign) : std::string("undefined")) << "\n";
      }
      return 0;
    }

    if (*repro) {
      bool all = true;
      for (const auto& c : acceptance::criteria()) {
        const auto r = acceptance::run(c, threads);
        all = all && r.passed;
        std::cout << acceptance::format(r, c.tolerance, repro_timings) << std::endl;
      }
      std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
