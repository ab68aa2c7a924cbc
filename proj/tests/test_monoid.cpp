#include "gtest_i128.hpp"

#include <random>

#include "azeta/acceptance.hpp"
#include "azeta/monoid.hpp"
#include "azeta/oracle.hpp"

using namespace azeta;

namespace {
PuiseuxPoly P(const char* s) { return PuiseuxPoly::parse(s); }
const MonoidScheme kP1 = models::projective_space(1);
}  // namespace

TEST(Monoid, InvariantFactors) {
  EXPECT_EQ(invariant_factors({2, 3}), (std::vector<i64>{6}));
  EXPECT_EQ(invariant_factors({2, 4}), (std::vector<i64>{2, 4}));
  EXPECT_EQ(invariant_factors({4, 6, 1}), (std::vector<i64>{2, 12}));
  EXPECT_EQ(invariant_factors({1, 1}), (std::vector<i64>{}));
  EXPECT_EQ(invariant_factors({12, 8, 9}), (std::vector<i64>{12, 72}));
  EXPECT_THROW(MonoidSchemePoint(0, {4, 6}), std::invalid_argument);
  EXPECT_THROW(MonoidSchemePoint(0, {1}), std::invalid_argument);
}

TEST(Monoid, CountExamples) {
  EXPECT_EQ(count_f1n(kP1, 4), 6);
  EXPECT_EQ(count_f1n(models::spec_f1n(3), 6), 3);
  EXPECT_EQ(count_f1n(MonoidScheme{}, 5), 0);
  EXPECT_EQ(count_zlift(kP1, 5), 6);
  EXPECT_EQ(count_zlift(models::torus(1), 7), 6);
  EXPECT_THROW(count_zlift(kP1, 6), std::invalid_argument);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto X = acceptance::random_monoid_scheme(rng);
    ASSERT_EQ(count_zlift(X, 2), static_cast<i128>(X.points.size()));
    ASSERT_EQ(count_f1n(X, 1), static_cast<i128>(X.points.size()));
  }
}

TEST(Monoid, ClassicalModels) {
  for (u64 q : {2, 3, 4, 5, 7, 8, 9, 25, 27, 49}) {
    const auto Q = static_cast<i128>(q);
    EXPECT_EQ(count_zlift(models::projective_space(2), q), Q * Q + Q + 1);
    EXPECT_EQ(count_zlift(models::affine_space(3), q), Q * Q * Q);
    EXPECT_EQ(count_zlift(models::torus(2), q), (Q - 1) * (Q - 1));
    EXPECT_EQ(count_zlift(models::product(kP1, kP1), q), (Q + 1) * (Q + 1));
    EXPECT_EQ(count_zlift(models::disjoint_union(kP1, models::torus(1)), q), 2 * Q);
  }
  // mu_2 x mu_3 = mu_6 after re-chaining.
  const auto X = models::product(models::spec_f1n(2), models::spec_f1n(3));
  ASSERT_EQ(X.points.size(), 1u);
  EXPECT_EQ(X.points[0].torsion, (std::vector<i64>{6}));
}

TEST(Monoid, Envelopes) {
  EXPECT_EQ(ceiling_poly(kP1), P("t + 1"));
  EXPECT_EQ(ceiling_poly(models::spec_f1n(3)), P("3"));
  const MonoidScheme punctured{"Gm-mu2", {{1, {}}, {0, {2}}}};
  EXPECT_EQ(ceiling_poly(punctured), P("t + 1"));
  EXPECT_EQ(floor_poly(models::spec_f1n(4), {}), P("1"));
  EXPECT_EQ(floor_poly(models::spec_f1n(4), {2}), P("2"));
  EXPECT_EQ(floor_poly(kP1, {2, 3}), P("t + 1"));
  EXPECT_EQ(f1_ceiling_floor(models::spec_f1n(3)), (EnvelopePair{P("3"), P("1")}));
  EXPECT_EQ(f1_ceiling_floor(kP1), (EnvelopePair{P("t + 1"), P("t + 1")}));
  const MonoidScheme r1t2{"r1t2", {{1, {2}}}};
  EXPECT_EQ(f1_ceiling_floor(r1t2), (EnvelopePair{P("2t - 2"), P("t - 1")}));
  EXPECT_EQ(qfiber_ceiling_floor(models::spec_f1n(4)), (EnvelopePair{P("4"), P("2")}));
  EXPECT_EQ(qfiber_ceiling_floor(models::spec_f1n(3)), (EnvelopePair{P("3"), P("1")}));
  const MonoidScheme two_torsion{"2tors", {{1, {2, 2}}, {0, {2}}}};
  const auto pair = qfiber_ceiling_floor(two_torsion);
  EXPECT_EQ(pair.ceiling, pair.floor);
}

TEST(Monoid, ZetaProducts) {
  EXPECT_EQ(zeta_product(kP1), FormalProduct::parse("1 / (s (s-1))"));
  EXPECT_EQ(zeta_product(models::spec_f1n(3)), FormalProduct::parse("s^-3"));
  for (unsigned n = 0; n <= 6; ++n) {
    FormalProduct want;
    for (unsigned k = 0; k <= n; ++k) want.multiply_factor(Rational(static_cast<i128>(k)), -1);
    EXPECT_EQ(zeta_product(models::projective_space(n)), want) << n;
  }
  EXPECT_EQ(zeta_floor_product(models::spec_f1n(4), {2}), FormalProduct::parse("s^-2"));
}

TEST(Monoid, ZetaIdentityRandomized) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const auto X = acceptance::random_monoid_scheme(rng);
    ASSERT_EQ(zeta_product(X), soule_zeta(ceiling_poly(X)));
    for (const std::set<u64>& S : {std::set<u64>{}, std::set<u64>{2}}) {
      ASSERT_EQ(zeta_floor_product(X, S), soule_zeta(floor_poly(X, S)));
    }
  }
}

TEST(Monoid, AffineOracleSample) {
  const auto F = build_field(3, 3);
  EXPECT_EQ(oracle::hom_count(F, 1, {2, 13}), 26 * 2 * 13);
  const MonoidScheme X{"a", {MonoidSchemePoint::from_cyclic(1, {2, 13})}};
  EXPECT_EQ(count_zlift(X, 27), 26 * 26);
}

TEST(Monoid, Json) {
  const auto j = nlohmann::json::parse(R"({"label":"mixed","points":[{"r":1,"torsion":[4,6]},{"r":0}]})");
  const auto X = monoid_from_json(j);
  EXPECT_EQ(X.label, "mixed");
  EXPECT_EQ(X.points[0].torsion, (std::vector<i64>{2, 12}));
  EXPECT_EQ(monoid_from_json(to_json(X)), X);
  EXPECT_THROW(monoid_from_json(nlohmann::json::parse(R"({"points":[{"r":-1}]})")), std::invalid_argument);
  EXPECT_THROW(monoid_from_json(nlohmann::json::parse(R"({"points":[{"r":0,"torsion":[0]}]})")), std::invalid_argument);
  EXPECT_THROW(monoid_from_json(nlohmann::json::parse(R"([1,2])")), std::invalid_argument);
}

TEST(Monoid, ModelNames) {
  EXPECT_EQ(models::by_name("P2").points.size(), 7u);
  EXPECT_EQ(models::by_name("A2").points.size(), 4u);
  EXPECT_EQ(models::by_name("Gm").points.size(), 1u);
  EXPECT_EQ(models::by_name("F1^5").points[0].torsion, (std::vector<i64>{5}));
  EXPECT_THROW(models::by_name("Q3"), std::invalid_argument);
  EXPECT_THROW(models::by_name("P"), std::invalid_argument);
}
