#include "gtest_i128.hpp"

#include "azeta/fit.hpp"
#include "azeta/sources.hpp"

using namespace azeta;

namespace {
PuiseuxPoly P(const char* s) { return PuiseuxPoly::parse(s); }
const EllipticCurve kCM(-1, 0);
}  // namespace

TEST(Fit, ProjectiveLine) {
  const auto v = verify_ceiling(P("t + 1"), monoid_zlift_source(models::projective_space(1), {}, 500), 3, false);
  EXPECT_EQ(v.status, VerdictStatus::verified);
  ASSERT_GE(v.witnesses.size(), 3u);
  EXPECT_EQ(v.witnesses[0], 2u);
  EXPECT_EQ(v.witnesses[1], 3u);
  EXPECT_EQ(v.witnesses[2], 4u);
  EXPECT_EQ(v.scanned_limit, 500u);
}

TEST(Fit, EllipticCeiling) {
  const auto seq = sample(elliptic_source(kCM, {}, 10000));
  const auto v = verify_ceiling(P("t + 2t^{1/2} + 1"), seq, 2, true);
  EXPECT_EQ(v.status, VerdictStatus::verified);
  EXPECT_NE(std::find(v.witnesses.begin(), v.witnesses.end(), 49u), v.witnesses.end());
  EXPECT_TRUE(recheck(P("t + 2t^{1/2} + 1"), seq, v));
  const auto bad = verify_ceiling(P("t"), seq, 2, true);
  EXPECT_EQ(bad.status, VerdictStatus::bound_violated);
  ASSERT_TRUE(bad.violation.has_value());
  EXPECT_GT(bad.violation->value, static_cast<i128>(bad.violation->n));
  // Without the Puiseux flag equality with an irrational value never holds at
  // non-squares, but the square witnesses remain.
  EXPECT_EQ(verify_ceiling(P("t + 2t^{1/2} + 1"), seq, 2, false).status, VerdictStatus::verified);
}

TEST(Fit, EllipticFloor) {
  const auto seq = sample(elliptic_source(kCM, {}, 30000));
  const auto v = verify_floor(P("t - 2t^{1/2} + 1"), seq, 1, true);
  EXPECT_EQ(v.status, VerdictStatus::verified);
  EXPECT_NE(std::find(v.witnesses.begin(), v.witnesses.end(), 2401u), v.witnesses.end());
  EXPECT_EQ(count_extension(kCM, 7, 4), 2304);
  EXPECT_TRUE(recheck(P("t - 2t^{1/2} + 1"), seq, v));
}

TEST(Fit, NonIntegralAtOne) {
  const auto seq = sample(elliptic_source(kCM, {}, 1000));
  EXPECT_EQ(verify_ceiling(P("t + (1/2)t^{1/2} + 3"), seq, 1, true).status, VerdictStatus::non_integral_at_one);
}

TEST(Fit, FamilyFloors) {
  for (u64 n = 2; n <= 8; ++n) {
    const auto v = verify_floor(PuiseuxPoly::t() + PuiseuxPoly::constant(-static_cast<i128>(n)), Gn_source(n, {}, 10000), 3, false);
    EXPECT_EQ(v.status, VerdictStatus::verified) << n;
    for (u64 w : v.witnesses) ASSERT_EQ((w - 1) % (n - 1), 0u);
  }
  EXPECT_TRUE(verify_floor(P("t - 1"), pell_source(5, {}, 10000), 3, false).verified());
}

TEST(Fit, InsufficientWitnesses) {
  // 2t is attained only at powers of 47 for Delta = -47.
  const auto v = verify_ceiling(P("2t"), pell_source(-47, {}, 5000), 3, false);
  EXPECT_EQ(v.status, VerdictStatus::insufficient_witnesses);
  EXPECT_EQ(v.witnesses, (std::vector<u64>{47, 2209}));
  EXPECT_FALSE(v.violation.has_value());
}

TEST(Fit, AntiSymmetry) {
  const auto seq = sample(An_source(1, {}, 5000));
  const auto c = verify_ceiling(P("t - 1"), seq, 3, false);
  const auto f = verify_floor(P("t - 1"), seq, 3, false);
  ASSERT_TRUE(c.verified() && f.verified());
  for (std::size_t i = 0; i < seq.size(); ++i) ASSERT_EQ(seq.values[i], static_cast<i128>(seq.index[i].q) - 1);
}

TEST(Fit, DomainMonotonicity) {
  const auto X = models::disjoint_union(models::projective_space(2), models::spec_f1n(6));
  const auto f = ceiling_poly(X);
  for (const std::set<u64>& S : {std::set<u64>{}, std::set<u64>{2}, std::set<u64>{2, 3}, std::set<u64>{5, 7}}) {
    EXPECT_NE(verify_ceiling(f, monoid_zlift_source(X, S, 5000), 3, false).status, VerdictStatus::bound_violated);
  }
  // A wrong candidate stays violated after shrinking the domain when the violation survives.
  EXPECT_EQ(verify_ceiling(P("t^2 + t + 1"), monoid_zlift_source(X, {2}, 5000), 3, false).status,
            VerdictStatus::bound_violated);
}

TEST(Fit, RejectLinear) {
  const auto seq = sample(elliptic_source(kCM, {}, 20000, DomainKind::primes_only));
  for (const auto& r : reject_linear_family(seq, 0, 5, 3)) {
    EXPECT_EQ(r.ceiling.status, VerdictStatus::bound_violated) << static_cast<long long>(r.c);
    EXPECT_LT(trace_fp(kCM, r.ceiling.violation->n), 1 - static_cast<i64>(r.c));
  }
  const auto gm = sample(monoid_zlift_source(models::torus(1), {}, 5000));
  const auto control = reject_linear_family(gm, -1, -1, 3);
  ASSERT_EQ(control.size(), 1u);
  EXPECT_TRUE(control[0].ceiling.verified());
  EXPECT_TRUE(control[0].floor.verified());
  EXPECT_THROW(reject_linear_family(sample(monoid_f1_source(models::torus(1), 50)), 0, 1, 3), std::invalid_argument);
}

TEST(Fit, Search) {
  const auto a3 = search_polynomial(sample(An_source(3, {}, 10000)), 1, -5, 5, 3);
  ASSERT_EQ(a3.ceilings.size(), 1u);
  EXPECT_EQ(a3.ceilings[0].candidate, "t - 2");
  EXPECT_FALSE(a3.ceiling_ambiguous);
  const auto f13 = search_polynomial(sample(monoid_zlift_source(models::spec_f1n(3), {}, 10000)), 0, -5, 5, 3);
  ASSERT_EQ(f13.ceilings.size(), 1u);
  EXPECT_EQ(f13.ceilings[0].candidate, "3");
  ASSERT_EQ(f13.floors.size(), 1u);
  EXPECT_EQ(f13.floors[0].candidate, "1");
  const auto ell = search_polynomial(sample(elliptic_source(kCM, {}, 10000, DomainKind::primes_only)), 1, -5, 5, 3);
  EXPECT_TRUE(ell.ceilings.empty());
  EXPECT_TRUE(ell.floors.empty());
  // At a tiny limit several constants pass: the report flags it.
  const auto tiny = search_polynomial(sample(monoid_zlift_source(models::spec_f1n(3), {}, 8)), 0, -5, 5, 1);
  EXPECT_TRUE(tiny.floor_ambiguous || tiny.ceiling_ambiguous || tiny.ceilings.size() <= 1);
  EXPECT_THROW(search_polynomial(sample(An_source(3, {}, 100)), 4, -1, 1, 3), std::invalid_argument);
  EXPECT_THROW(search_polynomial(sample(An_source(3, {}, 100)), 3, -20, 20, 3), std::invalid_argument);
}

TEST(Fit, F1Envelopes) {
  const MonoidScheme X{"r1t2", {{1, {2}}}};
  const auto env = f1_ceiling_floor(X);
  const auto seq = sample(monoid_f1_source(X, 2000));
  EXPECT_TRUE(verify_ceiling(env.ceiling, seq, 3, false).verified());
  EXPECT_TRUE(verify_floor(env.floor, seq, 3, false).verified());
}

TEST(Fit, SourceSpecs) {
  EXPECT_EQ(parse_source("An:n=3", {}, 100).label, "#A_3(F_q)");
  EXPECT_EQ(parse_source("pell:delta=5", {}, 100).label, "#C^5(F_q)");
  EXPECT_EQ(parse_source("curve:a=-1,b=0", {}, 100).domain.excluded, (std::set<u64>{2, 3}));
  EXPECT_EQ(parse_source("monoid:P1", {}, 100).label, "#P1_Z(F_q)");
  EXPECT_THROW(parse_source("An", {}, 100), std::invalid_argument);
  EXPECT_THROW(parse_source("An:k=3", {}, 100), std::invalid_argument);
  EXPECT_THROW(parse_source("foo:n=1", {}, 100), std::invalid_argument);
  EXPECT_THROW(parse_source("pell:delta=7", {}, 100), std::invalid_argument);
}

TEST(Fit, Determinism) {
  const auto src = elliptic_source(kCM, {}, 5000);
  const auto a = verify_ceiling(P("t + 2t^{1/2} + 1"), sample(src, 1), 2, true, 1);
  const auto b = verify_ceiling(P("t + 2t^{1/2} + 1"), sample(src, 3), 2, true, 3);
  EXPECT_EQ(a.witnesses, b.witnesses);
}
