#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "qhecke/zi/arith.hpp"
#include "qhecke/zi/factor.hpp"
#include "qhecke/zi/primes.hpp"
#include "support.hpp"

using namespace qhecke;

TEST(Gint, DivRemHasSmallRemainder) {
  proptest::gen g(11);
  for (int t = 0; t < 5000; ++t) {
    gint a = g.element(1'000'000), b = g.element(5000);
    auto [q, r] = div_rem(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LE(2 * r.norm(), b.norm());
  }
}

TEST(Gint, ExactlyOnePrimaryAssociate) {
  proptest::gen g(12);
  const gint units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int t = 0; t < 2000; ++t) {
    gint z = g.odd(10'000);
    int count = 0;
    for (const auto& u : units) count += is_primary(u * z) ? 1 : 0;
    EXPECT_EQ(count, 1) << to_string(z);
    EXPECT_TRUE(is_primary(to_primary(z)));
  }
}

TEST(Gint, PrimaryCriterionExamples) {
  EXPECT_TRUE(is_primary(gint{-3, 0}));
  EXPECT_TRUE(is_primary(gint{3, 2}));
  EXPECT_TRUE(is_primary(gint{1, 0}));
  EXPECT_FALSE(is_primary(gint{3, 0}));
  EXPECT_FALSE(is_primary(gint{1, 2}));
}

TEST(Gint, GcdDividesBothAndIsMaximal) {
  proptest::gen g(13);
  for (int t = 0; t < 2000; ++t) {
    gint c = g.element(50);
    gint a = c * g.element(1000), b = c * g.element(1000);
    gint d = gcd(a, b);
    EXPECT_TRUE(divides(d, a));
    EXPECT_TRUE(divides(d, b));
    EXPECT_TRUE(divides(c, d));
  }
}

TEST(Gint, CanonicalOrderOnPrimes) {
  // equal norms: larger real part first
  EXPECT_TRUE(canonical_less(gint{3, 2}, gint{-3, 2}));
  EXPECT_TRUE(canonical_less(gint{-1, 2}, gint{3, 2}));
}

TEST(Factor, RecomposesAndFactorsArePrimaryPrimes) {
  proptest::gen g(14);
  for (int t = 0; t < 2000; ++t) {
    gint z = g.element(100'000);
    auto f = factor(z);
    EXPECT_EQ(f.recompose(), z) << to_string(z);
    for (const auto& [p, e] : f.factors) {
      EXPECT_TRUE(is_primary(p));
      EXPECT_TRUE(is_prime(p));
      EXPECT_GT(e, 0u);
    }
  }
}

TEST(Factor, SieveAgreesWithGeneralFactor) {
  norm_sieve s(200'000);
  proptest::gen g(15);
  for (int t = 0; t < 1000; ++t) {
    gint z = g.element(300);
    auto a = factor(z), b = s.factor_gint(z);
    EXPECT_EQ(a.factors, b.factors);
    EXPECT_EQ(a.unit_exp, b.unit_exp);
    EXPECT_EQ(a.lambda_exp, b.lambda_exp);
  }
}

TEST(Arith, MangoldtMoebiusPhi) {
  EXPECT_NEAR(mangoldt(gint{-3, 0}), std::log(9.0), 1e-15);
  EXPECT_NEAR(mangoldt(gint{3, 2} * gint{3, 2}), std::log(13.0), 1e-15);
  EXPECT_EQ(mangoldt(gint{3, 2} * gint{-3, 0}), 0.0);
  EXPECT_EQ(moebius(gint{3, 2} * gint{-3, 0}), 1);
  EXPECT_EQ(moebius(gint{-3, 0}), -1);
  EXPECT_EQ(moebius(gint{-3, 0} * gint{-3, 0}), 0);
  EXPECT_EQ(euler_phi(gint{-3, 0}), 8);
  EXPECT_EQ(euler_phi(gint{3, 2}), 12);
}

TEST(Arith, MoebiusSumsToZeroOverDivisors) {
  // sum_{d | n} mu(d) = 0 for primary n != 1, over primary divisors
  for (const gint& n : {gint{3, 2} * gint{-3, 0}, gint{-1, 2} * gint{-1, 2} * gint{3, 2}, gint{-7, 0} * gint{-1, -2}}) {
    auto f = factor(n);
    int total = 0;
    const std::size_t k = f.factors.size();
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
      gint d{1, 0};
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) d = d * f.factors[i].first;
      total += moebius(d);
    }
    EXPECT_EQ(total, 0);
  }
}

TEST(Primes, CountMatchesRationalPrimeCount) {
  const std::uint64_t x = 100'000;
  auto ps = enumerate_primary_primes(x);
  std::size_t expect = 0;
  for (auto p : rational_primes(x)) {
    if (p % 4 == 1) expect += 2;
    if (p % 4 == 3 && static_cast<std::uint64_t>(p) * p <= x) expect += 1;
  }
  EXPECT_EQ(ps.size(), expect);
  for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_TRUE(canonical_less(ps[i - 1], ps[i]));
  std::set<gint> seen(ps.begin(), ps.end());
  EXPECT_EQ(seen.size(), ps.size());
}

TEST(Primes, FamilyFilterIsOneMod16) {
  auto ps = enumerate_primary_primes(20'000, gint{1, 0});
  ASSERT_FALSE(ps.empty());
  EXPECT_EQ(ps.front(), (gint{1, 16}));
  for (const auto& p : ps) {
    EXPECT_EQ(mod_pos<std::int64_t>(p.re, 16), 1);
    EXPECT_EQ(mod_pos<std::int64_t>(p.im, 16), 0);
  }
}

TEST(Primes, CacheRoundTripAndVersionMismatch) {
  auto dir = std::filesystem::temp_directory_path() / "qhecke_test_primes";
  std::filesystem::remove_all(dir);
  auto ps = enumerate_primary_primes(1'000'000);
  save_prime_cache(dir / "p.txt", 1'000'000, ps);
  auto back = load_prime_cache(dir / "p.txt", 1'000'000);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, ps);
  EXPECT_FALSE(load_prime_cache(dir / "p.txt", 999'999).has_value());
  std::filesystem::remove_all(dir);
}
