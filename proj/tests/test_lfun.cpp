#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qhecke/lfun/lcache.hpp"
#include "qhecke/lfun/zeta.hpp"
#include "qhecke/zi/primes.hpp"

using namespace qhecke;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Frozen 30-digit mpmath values.
struct ugamma_case {
  cd a, z, value;
};
const ugamma_case kUpperGamma[] = {
    {{0.5, 40}, {2.9401997335237251, 0.59600799238518365}, {4.3715735942129177e-07, 6.4525153387482467e-07}},
    {{0.25, 20}, {2.7015115293406984, 4.2073549240394827}, {-2.3877946306118171e-12, -1.2883100226718803e-11}},
    {{1.3, 0}, {5, 0}, {0.01150443774495869, 0}},
    {{0.5, 40}, {0.84884642001243493, 11.969939839248653}, {8.5435062316419503e-28, 1.3263325642339148e-27}},
    {{0.5, -25}, {4.8201107746946645, -39.708519641503543}, {-1.2543653239866179e-19, -5.3734763536294955e-19}},
};

}  // namespace

TEST(Special, UpperGammaOracle) {
  for (const auto& c : kUpperGamma) EXPECT_LT(rel(special::upper_gamma<double>(c.a, c.z), c.value), 1e-9);
}

TEST(Special, GammaFamilyOracle) {
  EXPECT_LT(rel(special::lgamma<double>(cd(0.5, 40)), cd(-61.912914538591195, 107.55621986920906)), 1e-13);
  // left of 1/2 only Gamma itself is defined, not the branch
  cd g = special::lgamma<double>(cd(0.25, -7.5)) - cd(-11.365620394646529, -7.2204628218474323);
  EXPECT_LT(std::abs(g.real()), 1e-12);
  EXPECT_LT(std::abs(std::remainder(g.imag(), 2 * std::numbers::pi)), 1e-12);
  EXPECT_LT(rel(special::digamma<double>(cd(0.5, 7)), cd(1.9450567385690904, 1.5707963267948966)), 1e-12);
  EXPECT_LT(rel(special::digamma<double>(cd(0.25, 0)), cd(-4.2274535333762655, 0)), 1e-12);
}

TEST(Special, ZetaOracle) {
  EXPECT_LT(rel(special::riemann_zeta<double>(cd(0.5, 14)), cd(0.022241142609993589, -0.10325812326645006)), 1e-9);
  EXPECT_LT(rel(special::hurwitz_zeta<double>(cd(2.3, 5), 0.25), cd(19.556537646164198, 14.21711443779426)), 1e-10);
  EXPECT_LT(rel(special::riemann_zeta<double>(cd(3, 0)), cd(1.2020569031595942, 0)), 1e-13);
  EXPECT_LT(rel(special::dirichlet_beta<double>(cd(2, 0)), cd(0.91596559417721901, 0)), 1e-13);
}

TEST(Zeta, DedekindValues) {
  EXPECT_LT(rel(zeta_eval(zeta_kind::dedekind, 2.0), cd(1.506703009922985, 0)), 1e-12);
  EXPECT_LT(rel(zeta_eval(zeta_kind::dedekind, cd(2.5, 1)), cd(1.1203655290593262, -0.19308903913343115)), 1e-11);
  EXPECT_LT(rel(zeta_eval(zeta_kind::dedekind, 2.0, true), cd(1.1300272574422388, 0)), 1e-12);
  EXPECT_LT(rel(zeta_log_derivative(zeta_kind::dedekind, 2.0, true), cd(-0.24984664853999933, 0)), 1e-8);
  EXPECT_LT(rel(zeta_log_derivative(zeta_kind::riemann, 2.0, true), cd(-0.33891193290788435, 0)), 1e-8);
}

TEST(Zeta, IdealSumOracleAgrees) {
  auto s = dedekind_ideal_sum(2.0, 2'000'000);
  EXPECT_NEAR(s.value, zeta_eval(zeta_kind::dedekind, 2.0).real(), 1e-6);
  EXPECT_NEAR(s.value, 1.506703, 1e-6);
}

TEST(Hecke, RootNumbersHaveModulusOne) {
  auto ps = enumerate_primary_primes(200'000, gint{1, 0});
  ASSERT_GE(ps.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(std::abs(root_number(ps[i])), 1.0, 1e-10);
}

TEST(Hecke, RejectsPrimesOutsideFamily) {
  EXPECT_THROW(make_hecke_l(gint{3, 2}), domain_error);
  EXPECT_THROW(make_hecke_l(gint{17, 0}), domain_error);
}

TEST(Hecke, CoefficientsMultiplicative) {
  auto L = make_hecke_l(gint{1, 16});
  for (std::size_t m = 1; m < 60; ++m)
    for (std::size_t n = 1; n < 60; ++n) {
      if (std::gcd(m, n) != 1) continue;
      EXPECT_LT(std::abs(L.coefficient(m * n) - L.coefficient(m) * L.coefficient(n)), 1e-12);
    }
  EXPECT_LT(std::abs(L.coefficient(2) - 1.0), 1e-15);
}

TEST(Hecke, AfeMatchesDirectSeriesAtTwo) {
  auto L = make_hecke_l(gint{1, 16});
  auto a = L.eval(cd(2.0, 0.5));
  eval_options o;
  o.method = eval_method::direct;
  auto d = L.eval(cd(2.0, 0.5), o);
  EXPECT_LT(std::abs(a.value - d.value), 1e-6);
}

TEST(Hecke, DoubleSmoothingAgreesAndConjugateSymmetry) {
  for (const gint& w : {gint{1, 16}, gint{-15, 32}}) {
    auto L = make_hecke_l(w);
    auto Lc = make_hecke_l(w, true);
    for (cd s : {cd(0.5, 0), cd(0.5, 7.3), cd(0.7, -12), cd(0.5, 30)}) {
      auto v = L.eval(s);
      EXPECT_LT(v.error_estimate, 1e-6 * std::max(1.0, std::abs(v.value)));
      // L(conj s, conj chi) = conj L(s, chi)
      EXPECT_LT(std::abs(Lc.eval(std::conj(s)).value - std::conj(v.value)), 1e-8);
    }
  }
}

TEST(Hecke, FunctionalEquationViaHardyZIsReal) {
  auto L = make_hecke_l(gint{1, 16});
  for (double t : {0.3, 5.0, 17.0, 33.0}) {
    double im = 0;
    L.hardy_z(t, {}, &im);
    EXPECT_LT(im, 1e-7);
  }
}

TEST(Dirichlet, MatchesHurwitzOracle) {
  struct c {
    gint w;
    cd s, value;
  };
  const c cases[] = {
      {{1, 16}, {0.5, 0}, {2.0955408100315518, -0.90656458798019901}},
      {{1, 16}, {0.5, 5}, {0.11584186008235263, -0.65825068788960328}},
      {{1, 16}, {2, 0}, {1.3248254995132072, -0.12270675219427737}},
      {{-15, 32}, {0.5, 0}, {1.676002774915994, -0.48759926713364898}},
      {{-15, 32}, {0.5, 5}, {0.15521869134303501, 0.27647178243270443}},
      {{-15, 32}, {2, 0}, {1.1515785672881438, -0.01561336819007386}},
  };
  for (const auto& k : cases) {
    auto L = make_quartic_dirichlet_l(k.w);
    EXPECT_LT(std::abs(L.eval(k.s).value - k.value), 1e-8) << to_string(k.w);
  }
}

TEST(Dirichlet, RootNumberModulusOne) {
  for (const auto& w : enumerate_primary_primes(20'000, gint{1, 0})) {
    if (w.im == 0) continue;
    EXPECT_NEAR(std::abs(quartic_dirichlet_gauss_sum(w)) / std::sqrt(static_cast<double>(w.norm())), 1.0, 1e-10);
  }
}

TEST(Zeros, CountMatchesArgumentPrinciple) {
  auto z = find_zeros(gint{1, 16}, 15.0);
  EXPECT_FALSE(z.missed_zero_warning);
  EXPECT_NEAR(static_cast<double>(z.ordinates.size()), z.expected_count, 2.0);
  EXPECT_LT(z.max_imag_residual, 1e-6);
  auto L = make_hecke_l(gint{1, 16});
  for (const auto& b : z.brackets) {
    EXPECT_LE(b.width(), 1e-4);
    // certified: sign change across the bracket
    if (b.width() > 0) EXPECT_LE(L.hardy_z(b.lo) * L.hardy_z(b.hi), 0.0);
  }
}

TEST(Zeros, RejectsOutOfRangeRequests) {
  EXPECT_THROW(find_zeros(gint{1, 16}, 41.0), domain_error);
  EXPECT_THROW(find_zeros(gint{1, 16}, 10.0, {}, 100), domain_error);
}

TEST(Zeros, CsvColumns) {
  zero_list z;
  z.conductor = 257;
  z.ordinates = {1.5, -2.25};
  std::ostringstream os;
  write_zeros_csv(os, {z});
  EXPECT_EQ(os.str(), "conductor,gamma\n257,1.5000000000\n257,-2.2500000000\n");
}

TEST(LCache, RoundTripAndVersion) {
  lvalue_cache c;
  c.put({gint{1, 16}, false, 0.5, 0.0, eval_method::afe}, {cd(0.1, -0.2), 1e-12, 99});
  auto path = std::filesystem::temp_directory_path() / "qhecke_test_lvalues.txt";
  c.save(path);
  lvalue_cache d;
  ASSERT_TRUE(d.load(path));
  auto v = d.find({gint{1, 16}, false, 0.5, 0.0, eval_method::afe});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->value, cd(0.1, -0.2));
  EXPECT_EQ(v->terms, 99u);
  {
    std::ofstream os(path, std::ios::trunc);
    os << "qhecke-lvalues 2 0\n";
  }
  lvalue_cache e;
  EXPECT_FALSE(e.load(path));
  std::filesystem::remove(path);
}

TEST(Afe, PrecisionAboveDoubleRejected) {
  auto L = make_hecke_l(gint{1, 16});
  eval_options o;
  o.precision_bits = 64;
  EXPECT_THROW(L.eval(0.5, o), domain_error);
}
