#include <gtest/gtest.h>

#include "qhecke/series_probe.hpp"

using namespace qhecke;

TEST(Vaughan, IdentityAndSigma4Vanishing) {
  for (const gint& r : {gint{-3, 0}, gint{3, 2}}) {
    auto small_u = vaughan_decompose_all(1000, r, 20);  // u <= sqrt(Z)
    auto big_u = vaughan_decompose_all(1000, r, 100);
    ASSERT_EQ(small_u.size(), 32u);
    for (std::size_t k = 0; k < 32; ++k) {
      EXPECT_LT(small_u[k].identity_residual(), 1e-8);
      EXPECT_LT(big_u[k].identity_residual(), 1e-8);
      EXPECT_EQ(small_u[k].sigma4, cd(0));
    }
  }
}

TEST(Vaughan, Sigma0IsDyadicDifferenceOfH) {
  gint r{-3, 0};
  for (std::size_t psi : {0u, 5u, 31u}) {
    auto v = vaughan_decompose(1000, r, 50, psi);
    cd d = H_partial(r, psi, 2000) - H_partial(r, psi, 1000);
    EXPECT_LT(std::abs(v.sigma0 - d), 1e-8 * std::max(1.0, std::abs(d)));
  }
}

TEST(Vaughan, RejectsInfeasibleRange) {
  EXPECT_THROW(vaughan_decompose_all(1e7, gint{-3, 0}, 100), domain_error);
}

TEST(Series, HBelowSmallestPrimeIsZero) {
  EXPECT_EQ(H_partial(gint{-3, 0}, 0, 4.0), cd(0));
}

TEST(Series, HTermsObeyTrivialBound) {
  auto s = H_sample(gint{-3, 0}, 0, geometric_grid(100, 5000, 8));
  auto control = prime_log_sample(s.grid);
  for (std::size_t i = 0; i < s.grid.size(); ++i) EXPECT_LE(std::abs(s.values[i]), control.values[i].real() + 1e-9);
}

TEST(Series, HDeterministic) {
  cd a = H_partial(gint{-3, 0}, 0, 10'000, 1);
  cd b = H_partial(gint{-3, 0}, 0, 10'000, 3);
  EXPECT_EQ(a, b);
}

TEST(Series, FPartialBasics) {
  gint a{3, 2}, r{-3, 0};
  EXPECT_EQ(F_partial(a, 10.0, r, 0), cd(0));
  EXPECT_THROW(F_partial(a, 1000.0, a * gint{-7, 0}, 0), domain_error);
  EXPECT_NE(F_partial(a, 5000.0, r, 0), cd(0));
}

TEST(Series, ExponentFitControls) {
  series_sample flat;
  flat.grid = geometric_grid(1000, 100000, 8);
  flat.values.assign(8, cd(3.0));
  flat.running_max.assign(8, 3.0);
  EXPECT_NEAR(exponent_fit(flat, 0.875).slope, 0.0, 1e-12);

  auto control = prime_log_sample(geometric_grid(1000, 100000, 8));
  auto f = exponent_fit(control, 1.0);
  EXPECT_NEAR(f.slope, 1.0, 0.05);

  series_sample zero = flat;
  zero.values.assign(8, cd(0));
  zero.running_max.assign(8, 0.0);
  EXPECT_TRUE(exponent_fit(zero, 0.875).degenerate);

  series_sample few = flat;
  few.grid.resize(4);
  few.values.resize(4);
  few.running_max.resize(4);
  EXPECT_THROW(exponent_fit(few, 0.875), domain_error);
}

TEST(Series, HTailBoundDecreasesWithCap) {
  EXPECT_GT(h_tail_bound(13, 1.75, 1e4), h_tail_bound(13, 1.75, 1e5));
  EXPECT_THROW(h_tail_bound(13, 1.4, 1e4), domain_error);
}

TEST(Relations, DegenerateAndSinglePrime) {
  h_series hs(20'000);
  auto trivial = h_relations_check(gint{1, 0}, gint{1, 0}, gint{1, 0}, 0, 1.75, hs);
  EXPECT_TRUE(trivial.pass());
  for (const auto& c : trivial.relations) EXPECT_LT(c.discrepancy, 1e-12);

  auto single = h_relations_check(gint{1, 0}, gint{1, 0}, gint{3, 2}, 3, 1.75, hs);
  EXPECT_TRUE(single.pass());
  for (const auto& c : single.relations) EXPECT_LE(c.discrepancy, c.bound);
}
