#include "gtest_i128.hpp"

#include <random>

#include "azeta/arith.hpp"
#include "azeta/rational.hpp"

using namespace azeta;

TEST(Isqrt, Examples) {
  EXPECT_EQ(isqrt(i128{0}), 0);
  EXPECT_EQ(isqrt(i128{16}), 4);
  EXPECT_EQ(isqrt(i128{92}), 9);
  EXPECT_EQ(isqrt_ceil(i128{92}), 10);
  EXPECT_EQ(isqrt_ceil(i128{16}), 4);
  EXPECT_THROW(isqrt(i128{-1}), std::domain_error);
}

TEST(Isqrt, BracketsUpToMillion) {
  for (i128 n = 0; n <= 1'000'000; ++n) {
    const i128 s = isqrt(n);
    ASSERT_LE(s * s, n);
    ASSERT_GT((s + 1) * (s + 1), n);
  }
}

TEST(Isqrt, LargeValues) {
  const u128 big = (u128{1} << 100) + 12345;
  const u128 s = isqrt(big);
  EXPECT_EQ(s, u128{1} << 50);
  EXPECT_EQ(iroot(u128{1000000}, 3), 100u);
  EXPECT_EQ(iroot(u128{999999}, 3), 99u);
  EXPECT_EQ(exact_root(u128{243}, 5), std::optional<u128>(3));
  EXPECT_FALSE(exact_root(u128{244}, 5).has_value());
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(5, 5), 0);
  EXPECT_EQ(legendre(2, 3), -1);
  EXPECT_EQ(legendre(4, 5), 1);
  EXPECT_EQ(legendre(-1, 7), -1);
  EXPECT_EQ(legendre(-1, 13), 1);
  EXPECT_THROW(legendre(3, 2), std::invalid_argument);
  EXPECT_THROW(legendre(3, 9), std::invalid_argument);
}

TEST(Legendre, Multiplicative) {
  std::mt19937_64 rng(7);
  const auto primes = primes_up_to(10000);
  std::uniform_int_distribution<std::size_t> pick(1, primes.size() - 1);
  std::uniform_int_distribution<i64> val(-1'000'000, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const u64 p = primes[pick(rng)];
    const i64 a = val(rng);
    const i64 b = val(rng);
    ASSERT_EQ(legendre(static_cast<i128>(a) * b, p), legendre(a, p) * legendre(b, p));
  }
}

TEST(Legendre, SumsToZero) {
  for (u64 p : primes_up_to(1000)) {
    if (p == 2) continue;
    int s = 0;
    for (u64 a = 0; a < p; ++a) s += legendre(static_cast<i128>(a), p);
    ASSERT_EQ(s, 0) << p;
  }
}

TEST(Primes, Basics) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(9999991));
  EXPECT_FALSE(is_prime(9999993));
  EXPECT_EQ(primes_up_to(30), (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(factorize(360), (std::vector<std::pair<u64, unsigned>>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(prime_divisors(-1728), (std::set<u64>{2, 3}));
  auto pp = as_prime_power(2048);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->p, 2u);
  EXPECT_EQ(pp->m, 11u);
  EXPECT_FALSE(as_prime_power(12));
  EXPECT_FALSE(as_prime_power(1));
}

TEST(Domain, EnumerateExamples) {
  auto qs = [](const PrimePowerDomain& d) {
    std::vector<std::tuple<u64, unsigned, u64>> out;
    for (const auto& e : enumerate(d)) out.emplace_back(e.p, e.m, e.q);
    return out;
  };
  using T = std::vector<std::tuple<u64, unsigned, u64>>;
  EXPECT_EQ(qs({{}, DomainKind::prime_powers, 10}),
            (T{{2, 1, 2}, {3, 1, 3}, {2, 2, 4}, {5, 1, 5}, {7, 1, 7}, {2, 3, 8}, {3, 2, 9}}));
  EXPECT_EQ(qs({{2}, DomainKind::prime_powers, 10}), (T{{3, 1, 3}, {5, 1, 5}, {7, 1, 7}, {3, 2, 9}}));
  EXPECT_EQ(qs({{}, DomainKind::primes_only, 10}), (T{{2, 1, 2}, {3, 1, 3}, {5, 1, 5}, {7, 1, 7}}));
  EXPECT_EQ(enumerate({{}, DomainKind::naturals_from_2, 5}).size(), 4u);
  EXPECT_THROW(PrimePowerDomain({4}, DomainKind::prime_powers, 10), std::invalid_argument);
  EXPECT_THROW(PrimePowerDomain({}, DomainKind::prime_powers, 1), std::invalid_argument);
}

TEST(Domain, AgreesWithSieveOracle) {
  const u64 limit = 100000;
  const std::set<u64> S{3, 7};
  const auto got = enumerate({S, DomainKind::prime_powers, limit});
  std::vector<u64> want;
  for (u64 n = 2; n <= limit; ++n) {
    // smallest prime factor by trial division; n is a prime power iff it is a power of it
    u64 p = n;
    for (u64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        p = d;
        break;
      }
    }
    u64 m = n;
    while (m % p == 0) m /= p;
    if (m == 1 && S.count(p) == 0) want.push_back(n);
  }
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    ASSERT_EQ(got[i].q, want[i]);
    if (i > 0) {
      ASSERT_LT(got[i - 1].q, got[i].q);
    }
  }
}

TEST(SmallField, Examples) {
  const auto F5 = build_field(5, 1);
  EXPECT_EQ(F5.order(), 5u);
  const auto F4 = build_field(2, 2);
  EXPECT_EQ(F4.modulus(), (std::vector<u64>{1, 1, 1}));  // x^2 + x + 1
  const auto F9 = build_field(3, 2);
  u64 best = 0;
  for (u64 a = 1; a < 9; ++a) best = std::max(best, F9.multiplicative_order(static_cast<SmallField::Element>(a)));
  EXPECT_EQ(best, 8u);
  EXPECT_THROW(build_field(4, 1), std::invalid_argument);
  EXPECT_THROW(build_field(2, 0), std::invalid_argument);
  EXPECT_THROW(build_field(181, 2), std::invalid_argument);  // 32761 > 30000
}

TEST(SmallField, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(11);
  for (auto [p, m] : std::vector<std::pair<u64, unsigned>>{{2, 5}, {3, 3}, {7, 2}, {31, 3}, {2, 11}, {101, 1}}) {
    const auto F = build_field(p, m);
    std::uniform_int_distribution<u64> any(0, F.order() - 1);
    for (int i = 0; i < 200; ++i) {
      const auto a = static_cast<SmallField::Element>(any(rng));
      const auto b = static_cast<SmallField::Element>(any(rng));
      const auto c = static_cast<SmallField::Element>(any(rng));
      ASSERT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      ASSERT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      ASSERT_EQ(F.add(a, F.neg(a)), F.zero());
      if (a != 0) {
        ASSERT_EQ(F.pow(a, F.order() - 1), F.one());
        ASSERT_EQ(F.mul(a, F.pow(a, F.order() - 2)), F.one());
      }
    }
  }
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2).to_string(), "-1/2");
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
  const i128 big = i128{1} << 100;
  EXPECT_THROW(checked::mul(big, big), std::overflow_error);
}
