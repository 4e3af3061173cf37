#include <gtest/gtest.h>

#include "qhecke/symbols.hpp"
#include "qhecke/zi/primes.hpp"
#include "support.hpp"

using namespace qhecke;

TEST(Symbols, WorkedReciprocityCase) {
  gint a{-3, 0}, g{3, -2};
  ASSERT_TRUE(is_primary(a) && is_primary(g));
  EXPECT_EQ(c_exponent(a, g), 6);
  EXPECT_EQ(quartic_symbol(a, g).str(), "-1");
  EXPECT_EQ(quartic_symbol(g, a).str(), "-1");
  EXPECT_EQ(brute_force_symbol(a, g).str(), "-1");
}

TEST(Symbols, ReciprocityMatchesBruteForceExhaustiveSmall) {
  auto elems = enumerate_primary_elements(150);
  for (const auto& n : elems) {
    for (std::int64_t x = -12; x <= 12; ++x)
      for (std::int64_t y = -12; y <= 12; ++y) {
        gint a{x, y};
        EXPECT_EQ(quartic_symbol(a, n), brute_force_symbol(a, n)) << to_string(a) << " / " << to_string(n);
      }
  }
}

TEST(Symbols, ReciprocityMatchesBruteForceRandom) {
  proptest::gen g(21);
  for (int t = 0; t < 1500; ++t) {
    gint n = g.odd(3000), a = g.element(1'000'000);
    EXPECT_EQ(quartic_symbol(a, n), brute_force_symbol(a, n)) << to_string(a) << " / " << to_string(n);
  }
}

TEST(Symbols, QuarticReciprocityLaw) {
  proptest::gen g(22);
  int checked = 0;
  while (checked < 3000) {
    gint a = g.primary(2000), b = g.primary(2000);
    if (!coprime(a, b)) continue;
    ++checked;
    auto lhs = quartic_symbol(a, b), rhs = quartic_symbol(b, a);
    int sign = rho(a, b) == -1 ? 2 : 0;
    EXPECT_EQ(lhs, rhs * symbol_value::power(sign)) << to_string(a) << ", " << to_string(b);
    EXPECT_EQ(c_parity(a, b), static_cast<int>(c_exponent(a, b) % 2));
  }
}

TEST(Symbols, SupplementaryLaws) {
  proptest::gen g(23);
  for (int t = 0; t < 2000; ++t) {
    gint n = g.primary(5000);
    EXPECT_EQ(brute_force_symbol(gint{0, 1}, n), symbol_value::power(supplement_i(n))) << to_string(n);
    EXPECT_EQ(brute_force_symbol(gint{1, 1}, n), symbol_value::power(supplement_lambda(n))) << to_string(n);
  }
}

TEST(Symbols, MultiplicativeInBothArguments) {
  proptest::gen g(24);
  for (int t = 0; t < 2000; ++t) {
    gint a = g.element(10'000), b = g.element(10'000), n = g.odd(500), m = g.odd(500);
    EXPECT_EQ(quartic_symbol(a * b, n), quartic_symbol(a, n) * quartic_symbol(b, n));
    EXPECT_EQ(quartic_symbol(a, n * m), quartic_symbol(a, n) * quartic_symbol(a, m));
  }
}

TEST(Symbols, ZeroWhenNotCoprimeAndPeriodic) {
  gint n{3, 2};
  EXPECT_TRUE(quartic_symbol(n * gint{5, 7}, n).is_zero());
  proptest::gen g(25);
  for (int t = 0; t < 500; ++t) {
    gint a = g.element(1000), k = g.element(1000), w = g.primary(300);
    EXPECT_EQ(quartic_symbol(a + k * w, w), quartic_symbol(a, w));
  }
}

TEST(Symbols, QuadraticIsSquareOfQuartic) {
  proptest::gen g(26);
  for (int t = 0; t < 500; ++t) {
    gint a = g.element(1000), n = g.odd(300);
    EXPECT_EQ(residue_symbol(a, n, 2), quartic_symbol(a, n).squared());
  }
  EXPECT_THROW(residue_symbol(gint{1, 0}, gint{3, 0}, 3), domain_error);
  EXPECT_THROW(quartic_symbol(gint{1, 0}, gint{1, 1}), domain_error);
}

TEST(Symbols, LargeSieveRatioBounded) {
  auto r = large_sieve_ratio(50, 50, 20, 7);
  EXPECT_EQ(r.ratios.size(), 20u);
  EXPECT_LT(r.max_ratio, 10.0);
  EXPECT_GT(r.max_ratio, 0.0);
}
