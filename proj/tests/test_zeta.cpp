#include "gtest_i128.hpp"

#include <random>

#include "azeta/zeta.hpp"

using namespace azeta;

namespace {
FormalProduct Z(const char* s) { return FormalProduct::parse(s); }
PuiseuxPoly P(const char* s) { return PuiseuxPoly::parse(s); }

FormalProduct random_product(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3), mult(-3, 3), count(0, 4);
  FormalProduct z;
  for (int k = count(rng); k > 0; --k) z.multiply_factor(Rational(num(rng), den(rng)), Rational(mult(rng)));
  return z;
}

PuiseuxPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), count(0, 4);
  PuiseuxPoly f;
  for (int k = count(rng); k > 0; --k) f.add_term(Rational(num(rng), den(rng)), Rational(std::abs(num(rng)), den(rng)));
  return f;
}
}  // namespace

TEST(Soule, Examples) {
  const auto zc = soule_zeta(P("t + 2t^{1/2} + 1"));
  EXPECT_EQ(zc.multiplicity(0), Rational(-1));
  EXPECT_EQ(zc.multiplicity(Rational(1, 2)), Rational(-2));
  EXPECT_EQ(zc.multiplicity(1), Rational(-1));
  EXPECT_EQ(zc.to_string(), "1 / (s (s-1/2)^2 (s-1))");
  EXPECT_EQ(soule_zeta(P("t - 2t^{1/2} + 1")).to_string(), "(s-1/2)^2 / (s (s-1))");
  EXPECT_TRUE(soule_zeta(PuiseuxPoly()).is_one());
  EXPECT_EQ(soule_zeta(PuiseuxPoly()).to_string(), "1");
  EXPECT_EQ(soule_zeta(P("1")).to_string(), "1 / s");
}

TEST(Soule, AdditiveToMultiplicative) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_poly(rng), g = random_poly(rng);
    ASSERT_EQ(soule_zeta(f + g), soule_zeta(f) * soule_zeta(g));
  }
}

TEST(FormalProduct, PrintParseRoundTrip) {
  EXPECT_EQ(Z("s^-1"), Z("1 / s"));
  EXPECT_EQ(Z("(s+2)^{1/2}").to_string(), "(s+2)^{1/2}");
  EXPECT_EQ(Z("(s-1)^(3) / s").to_string(), "(s-1)^3 / s");
  EXPECT_THROW(Z("(x-1)"), std::invalid_argument);
  EXPECT_THROW(Z("1 / "), std::invalid_argument);
  EXPECT_THROW(Z(""), std::invalid_argument);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; ++i) {
    const auto z = random_product(rng);
    ASSERT_EQ(FormalProduct::parse(z.to_string()), z) << z.to_string();
  }
}

TEST(Tensor, Examples) {
  EXPECT_EQ(tensor(Z("1 / (s (s-1/2))"), Z("1 / (s (s-1/2))")), Z("1 / (s (s-1/2)^2 (s-1))"));
  EXPECT_EQ(tensor(Z("s / (s-1/2)"), Z("s / (s-1/2)")), Z("(s-1/2)^2 / (s (s-1))"));
  EXPECT_TRUE(tensor(Z("1 / (s (s-1))"), FormalProduct()).is_one());
}

TEST(Tensor, CommutativeAndMultiplicitySum) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_product(rng), b = random_product(rng);
    ASSERT_EQ(tensor(a, b), tensor(b, a));
    ASSERT_EQ(tensor(a, b).total_multiplicity(), -(a.total_multiplicity() * b.total_multiplicity()));
  }
}

TEST(Tensor, MatchesProductOfPolynomials) {
  // soule(f g) = soule(f) (x) soule(g) for polynomials in t^{1/d}.
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_poly(rng), g = random_poly(rng);
    ASSERT_EQ(soule_zeta(f * g), tensor(soule_zeta(f), soule_zeta(g)));
  }
}

TEST(Reflect, Examples) {
  const auto r1 = reflect(Z("1 / (s (s-1))"), 1);
  EXPECT_EQ(r1.sign, 1);
  EXPECT_EQ(r1.product, Z("1 / (s (s-1))"));
  const auto r2 = reflect(Z("1 / (s (s-1) (s-2))"), 2);
  EXPECT_EQ(r2.sign, -1);
  EXPECT_EQ(r2.product, Z("1 / (s (s-1) (s-2))"));
  const auto r3 = reflect(Z("(s-1/2)^2 / (s (s-1))"), 1);
  EXPECT_EQ(r3.sign, 1);
  EXPECT_FALSE(reflect(Z("(s-1)^{1/2}"), 1).sign.has_value());
}

TEST(Reflect, Involution) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto z = random_product(rng);
    const Rational d(i % 5, 2);
    const auto once = reflect(z, d);
    const auto twice = reflect(once.product, d);
    ASSERT_EQ(twice.product, z);
    ASSERT_EQ(once.sign, twice.sign);
  }
}

TEST(FunctionalEquation, Examples) {
  const auto f = check_functional_equation(Z("(s-1/2)^2 / (s (s-1))"), 1);
  EXPECT_TRUE(f.symmetric);
  EXPECT_EQ(f.sign, 1);
  const auto c = check_functional_equation(Z("1 / (s (s-1/2)^2 (s-1))"), 1);
  EXPECT_TRUE(c.symmetric);
  EXPECT_EQ(c.sign, 1);
  const auto n = check_functional_equation(Z("1 / (s (s-2))"), 1);
  EXPECT_FALSE(n.symmetric);
  EXPECT_FALSE(n.sign.has_value());
}
