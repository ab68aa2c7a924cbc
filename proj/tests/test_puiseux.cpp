#include "gtest_i128.hpp"

#include <random>

#include "azeta/puiseux.hpp"

using namespace azeta;

namespace {
PuiseuxPoly P(const char* s) { return PuiseuxPoly::parse(s); }
}  // namespace

TEST(Puiseux, ParseAndPrint) {
  EXPECT_EQ(P("t + 2t^{1/2} + 1").to_string(), "t + 2t^{1/2} + 1");
  EXPECT_EQ(P("1 + 2*t^(1/2) + t").to_string(), "t + 2t^{1/2} + 1");
  EXPECT_EQ(P("3t^2").to_string(), "3t^2");
  EXPECT_EQ(P("(1/2)t").to_string(), "(1/2)t");
  EXPECT_EQ(P("-t").to_string(), "-t");
  EXPECT_EQ(P("-1").to_string(), "-1");
  EXPECT_EQ(P("t - t").to_string(), "0");
  EXPECT_EQ(P("t^{2/4}"), P("t^{1/2}"));
  EXPECT_THROW(P("t^"), std::invalid_argument);
  EXPECT_THROW(P("x"), std::invalid_argument);
  EXPECT_THROW(P(""), std::invalid_argument);
  EXPECT_THROW(PuiseuxPoly::monomial(1, Rational(-1)), std::invalid_argument);
}

TEST(Puiseux, RoundTripRandom) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), exp_num(0, 12), count(0, 5);
  for (int i = 0; i < 500; ++i) {
    PuiseuxPoly f;
    for (int k = count(rng); k > 0; --k) f.add_term(Rational(num(rng), den(rng)), Rational(exp_num(rng), den(rng)));
    ASSERT_EQ(PuiseuxPoly::parse(f.to_string()), f) << f.to_string();
  }
}

TEST(Puiseux, AlgebraExamples) {
  EXPECT_EQ(expand_binomial(1, 0), PuiseuxPoly::constant(1));
  EXPECT_EQ(expand_binomial(3, 2), P("3t^2 - 6t + 3"));
  EXPECT_EQ(add(P("t + 2t^{1/2} + 1"), scale(P("t - 2t^{1/2} + 1"), -1)), P("4t^{1/2}"));
  EXPECT_EQ(P("t^{1/2} + 1") * P("t^{1/2} - 1"), P("t - 1"));
  EXPECT_EQ(P("t^{1/3} + t^{1/2}").exponent_denominator(), 6);
  EXPECT_TRUE(P("3t^2 + 1").is_ordinary_polynomial());
}

TEST(Puiseux, RingAxioms) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), exp_num(0, 6), count(0, 4);
  auto random = [&] {
    PuiseuxPoly f;
    for (int k = count(rng); k > 0; --k) f.add_term(Rational(num(rng), den(rng)), Rational(exp_num(rng), den(rng)));
    return f;
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = random(), b = random(), c = random();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(scale(a + b, Rational(3, 2)), scale(a, Rational(3, 2)) + scale(b, Rational(3, 2)));
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(Puiseux, EvalExact) {
  EXPECT_EQ(eval_exact(P("t + 2t^{1/2} + 1"), 4), Rational(9));
  EXPECT_EQ(eval_exact(P("t - 2t^{1/2} + 1"), 1), Rational(0));
  EXPECT_EQ(eval_exact(P("t + 2t^{1/2} + 1"), 1), Rational(4));
  EXPECT_EQ(eval_exact(P("(1/2)t^{2/3}"), 27), Rational(9, 2));
  EXPECT_THROW(eval_exact(P("t^{1/2}"), 2), std::domain_error);
}

TEST(Puiseux, FloorCeilExamples) {
  EXPECT_EQ(floor_eval(P("t + 2t^{1/2} + 1"), 2), 5);
  EXPECT_EQ(ceil_eval(P("t + 2t^{1/2} + 1"), 2), 6);
  EXPECT_EQ(floor_eval(P("t + 2t^{1/2} + 1"), 9), 16);
  EXPECT_EQ(ceil_eval(P("t + 2t^{1/2} + 1"), 9), 16);
  EXPECT_EQ(ceil_eval(P("t - 2t^{1/2} + 1"), 2), 1);
  EXPECT_EQ(floor_eval(P("t - 2t^{1/2} + 1"), 2), 0);
  EXPECT_EQ(floor_eval(P("-t^{1/2}"), 2), -2);
  EXPECT_EQ(ceil_eval(P("(1/3)t"), 4), 2);
}

TEST(Puiseux, RationalValueAtNonPerfectPowers) {
  // t^{1/2} - t^{1/4}... irrational pieces that cancel: at q = 8, t^{1/3} = 2 while
  // the exponent denominator is 6, so eval_exact does not apply.
  const auto f = P("t^{1/3} + t^{1/2} - t^{1/2}");
  EXPECT_EQ(floor_eval(f, 8), 2);
  const auto g = P("t^{1/3} + t^{1/2}");  // 2 + 2 sqrt 2 at q = 8
  EXPECT_EQ(floor_eval(g, 8), 4);
  EXPECT_EQ(ceil_eval(g, 8), 5);
  const auto h = P("t^{2/3} - 4 + t^{1/6}");  // 4 - 4 + 8^{1/6} = sqrt 2
  EXPECT_EQ(floor_eval(h, 8), 1);
  EXPECT_EQ(ceil_eval(h, 8), 2);
}

TEST(Puiseux, OrdinaryPolynomialsAreExact) {
  const auto f = P("(1/2)t^2 - 3t + 7");
  for (u64 q = 1; q <= 10000; ++q) {
    const Rational v = eval_exact(f, q);
    ASSERT_EQ(floor_eval(f, q), v.floor());
    ASSERT_EQ(ceil_eval(f, q), v.ceil());
  }
}

TEST(Puiseux, BranchConsistency) {
  const auto f = P("t^{1/2}");
  for (u64 r = 1; r <= 300; ++r) {
    ASSERT_EQ(floor_eval(f, r * r), static_cast<i128>(r));
    ASSERT_EQ(ceil_eval(f, r * r), static_cast<i128>(r));
  }
}

TEST(Puiseux, HasseEnvelopeCrossCheck) {
  for (unsigned g = 1; g <= 3; ++g) {
    const auto f = PuiseuxPoly::t() + PuiseuxPoly::monomial(2 * g, Rational(1, 2)) + PuiseuxPoly::constant(1);
    for (u64 q = 1; q <= 100000; ++q) {
      const i128 want = static_cast<i128>(q) + isqrt(static_cast<i128>(4 * g * g * q)) + 1;
      ASSERT_EQ(floor_eval(f, q), want) << "g=" << g << " q=" << q;
    }
  }
}

TEST(Puiseux, ValueAtOne) {
  EXPECT_EQ(value_at_one(P("t + 2t^{1/2} + 1")).value, Rational(4));
  EXPECT_TRUE(value_at_one(P("t - 2t^{1/2} + 1")).is_integer);
  const auto half = value_at_one(P("(1/2)t"));
  EXPECT_EQ(half.value, Rational(1, 2));
  EXPECT_FALSE(half.is_integer);
}
