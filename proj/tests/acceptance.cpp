// Acceptance run: one PASS/FAIL line per criterion, details after the verdict.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhecke/cli/report.hpp"
#include "qhecke/gauss_sums.hpp"
#include "qhecke/harness/experiments.hpp"
#include "qhecke/lfun/zeros.hpp"
#include "qhecke/lfun/zeta.hpp"
#include "qhecke/parallel.hpp"
#include "qhecke/ray_class.hpp"
#include "qhecke/series_probe.hpp"
#include "qhecke/symbols.hpp"
#include "qhecke/zi/arith.hpp"
#include "qhecke/zi/primes.hpp"

using namespace qhecke;
using json = cli::json;

namespace {

unsigned g_threads = 1;

struct verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<gint> odd_elements(std::uint64_t limit) {
  std::vector<gint> out;
  const auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  for (std::int64_t x = -b; x <= b; ++x)
    for (std::int64_t y = -b; y <= b; ++y) {
      gint z{x, y};
      if (z.is_odd() && static_cast<std::uint64_t>(z.norm()) <= limit) out.push_back(z);
    }
  return out;
}

gint random_odd(std::mt19937_64& rng, std::int64_t bound, std::uint64_t norm_limit) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  for (;;) {
    gint z{d(rng), d(rng)};
    if (z.is_odd() && !z.is_unit() && static_cast<std::uint64_t>(z.norm()) <= norm_limit) return z;
  }
}

verdict c1_symbol_oracle() {
  auto elems = odd_elements(2000);
  std::vector<gint> dens;
  for (const auto& n : elems)
    if (is_primary(n) && !n.is_unit()) dens.push_back(n);
  std::vector<std::size_t> bad(dens.size(), 0), pairs(dens.size(), 0);
  parallel_for(dens.size(), g_threads, [&](std::size_t i) {
    for (const auto& a : elems) {
      if (!coprime(a, dens[i])) continue;
      ++pairs[i];
      if (!(quartic_symbol(a, dens[i]) == brute_force_symbol(a, dens[i]))) ++bad[i];
    }
  });
  std::size_t mismatches = 0, total = 0;
  for (std::size_t i = 0; i < dens.size(); ++i) mismatches += bad[i], total += pairs[i];

  std::mt19937_64 rng(1);
  std::size_t random_bad = 0, random_total = 0;
  while (random_total < 10'000) {
    gint a = random_odd(rng, 10'000, 100'000'000), n = random_odd(rng, 10'000, 100'000'000);
    if (!coprime(a, n)) continue;
    ++random_total;
    if (!(quartic_symbol(a, n) == brute_force_symbol(a, n))) ++random_bad;
  }
  return {mismatches == 0 && random_bad == 0,
          std::to_string(total) + " exhaustive pairs, " + std::to_string(random_total) + " random pairs to norm 1e8, " +
              std::to_string(mismatches + random_bad) + " mismatches"};
}

verdict c2_reciprocity() {
  gint a{-3, 0}, g{3, -2};
  bool worked = c_exponent(a, g) == 6 && quartic_symbol(a, g).str() == "-1" && quartic_symbol(g, a).str() == "-1";
  std::mt19937_64 rng(2);
  std::size_t bad = 0, n = 0;
  while (n < 10'000) {
    gint x = to_primary(random_odd(rng, 3000, 10'000'000)), y = to_primary(random_odd(rng, 3000, 10'000'000));
    if (x.is_unit() || y.is_unit() || !coprime(x, y)) continue;
    ++n;
    auto lhs = quartic_symbol(x, y), rhs = quartic_symbol(y, x);
    bool ok = lhs == rhs * symbol_value::power(rho(x, y) == -1 ? 2 : 0);
    ok = ok && brute_force_symbol(gint{0, 1}, y) == symbol_value::power(supplement_i(y));
    ok = ok && brute_force_symbol(gint{1, 1}, y) == symbol_value::power(supplement_lambda(y));
    ok = ok && c_parity(x, y) == static_cast<int>(c_exponent(x, y) % 2);
    if (!ok) ++bad;
  }
  return {worked && bad == 0, std::string("worked case (-3, 3-2i) ") + (worked ? "ok" : "WRONG") + ", " +
                                  std::to_string(n) + " random primary pairs, " + std::to_string(bad) + " failures"};
}

verdict c3_gauss() {
  auto cs = odd_elements(3000);
  std::vector<double> worst(cs.size(), 0.0), modulus(cs.size(), 0.0);
  parallel_for(cs.size(), g_threads, [&](std::size_t i) {
    const gint& c = cs[i];
    if (c.is_unit()) return;
    std::mt19937_64 rng(1000 + i);
    std::uniform_int_distribution<std::int64_t> d(-500, 500);
    gint k{d(rng), d(rng)};
    const double scale = std::sqrt(static_cast<double>(c.norm()));
    for (int l : {2, 4})
      for (auto v : {gauss_variant::K, gauss_variant::plain}) {
        auto f = gauss_sum_fast(k, c, l, v).value, g = gauss_sum_direct(k, c, l, v).value;
        worst[i] = std::max(worst[i], static_cast<double>(std::abs(f - g)) / scale);
      }
    if (is_squarefree(c) && coprime(k, c)) {
      double m = static_cast<double>(std::abs(gauss_sum_fast(k, c, 4, gauss_variant::K).value));
      modulus[i] = std::abs(m - scale) / scale;
    }
  });
  double fast_direct = *std::max_element(worst.begin(), worst.end());
  double mod = *std::max_element(modulus.begin(), modulus.end());
  double table = 0;
  std::size_t entries = 0;
  for (const auto& w : enumerate_primary_primes(10'000)) {
    double q = 1;
    for (unsigned ell = 1;; ++ell) {
      q *= static_cast<double>(w.norm());
      if (q > 10'000) break;
      for (unsigned k = 0; k <= ell + 1; ++k) {
        auto f = prime_power_gauss(w, k, ell);
        auto d = gauss_sum_direct(gpow(w, k), gpow(w, ell), 4, gauss_variant::K).value;
        table = std::max(table, static_cast<double>(std::abs(f - d)) / std::max(1.0, std::sqrt(q)));
        ++entries;
      }
    }
  }
  return {fast_direct < 1e-9 && mod < 1e-9 && table < 1e-9,
          std::to_string(cs.size()) + " moduli, fast/direct " + fmt("%.2e", fast_direct) + ", |g|/sqrt(N) - 1 " +
              fmt("%.2e", mod) + ", prime-power table " + std::to_string(entries) + " entries " + fmt("%.2e", table)};
}

struct c4_result {
  verdict v;
  json report;
};

c4_result c4_vaughan() {
  json rep = json::array();
  double residual = 0, sigma0 = 0;
  bool sigma4_zero = true;
  for (double Z : {1e3, 1e4}) {
    for (const gint& r : {gint{-3, 0}, gint{3, 2}}) {
      const double u_small = std::floor(std::sqrt(Z)), u_big = std::floor(std::pow(Z, 2.0 / 3));
      auto small = vaughan_decompose_all(Z, r, u_small, g_threads);
      auto big = vaughan_decompose_all(Z, r, u_big, g_threads);
      for (std::size_t psi = 0; psi < small.size(); ++psi) {
        residual = std::max({residual, small[psi].identity_residual(), big[psi].identity_residual()});
        sigma4_zero = sigma4_zero && small[psi].sigma4 == cd(0);
        cd h = H_partial(r, psi, 2 * Z, g_threads) - H_partial(r, psi, Z, g_threads);
        sigma0 = std::max(sigma0, std::abs(small[psi].sigma0 - h) / std::max(std::abs(h), 1e-300));
        rep.push_back(cli::to_json(small[psi]));
        rep.push_back(cli::to_json(big[psi]));
      }
    }
  }
  return {{residual < 1e-8 && sigma4_zero && sigma0 < 1e-8,
           "Z in {1e3, 1e4}, 2 r, 32 characters: identity " + fmt("%.2e", residual) + ", Sigma4 = 0 for u <= sqrt Z " +
               (sigma4_zero ? "yes" : "NO") + ", Sigma0 vs H_2Z - H_Z " + fmt("%.2e", sigma0)},
          rep};
}

verdict c5_relations() {
  h_series hs(20'000, g_threads);
  const gint one{1, 0}, p{3, 2}, q{-3, 0}, s{-1, 2};
  struct cfg {
    gint r1, r2, r3;
  };
  const cfg cfgs[] = {{p, one, one}, {one, q, one}, {one, one, s}, {p, q, one}, {q, s, p}};
  bool ok = true;
  double worst = 0;
  for (const auto& c : cfgs) {
    auto r = h_relations_check(c.r1, c.r2, c.r3, 3, 1.75, hs);
    ok = ok && r.pass();
    for (const auto& x : r.relations) worst = std::max(worst, x.discrepancy / x.bound);
  }
  return {ok, "5 configurations at s = 1.75, cap 2e4: max discrepancy/tail bound " + fmt("%.2e", worst)};
}

verdict c6_ray_class() {
  const auto& g = ray_class_16();
  const int a = g.order(), b = unit_group_mod16_order() / 4;
  int dim = 1;
  for (int f : g.invariant_factors) dim *= f;
  bool orth = true;
  const int n = g.order(), m = g.exponent;
  for (std::size_t x = 0; x < g.characters.size(); ++x)
    for (std::size_t y = 0; y < g.characters.size(); ++y) {
      // exact: a nontrivial character takes each value in its image equally often
      std::vector<int> hist(m, 0);
      for (int c = 0; c < n; ++c) hist[((g.characters[x][c] - g.characters[y][c]) % m + m) % m]++;
      if (x == y) {
        orth = orth && hist[0] == n;
        continue;
      }
      int val = -1, nonzero = 0;
      for (int h : hist) {
        if (!h) continue;
        ++nonzero;
        if (val < 0) val = h;
        orth = orth && h == val;
      }
      orth = orth && nonzero > 1;
    }
  const bool ok = a == 32 && b == 32 && dim == 32 && static_cast<int>(g.characters.size()) == 32 && orth;
  return {ok, "quotient enumeration " + std::to_string(a) + ", (O/16)^x / units " + std::to_string(b) +
                  ", character count " + std::to_string(g.characters.size()) + ", orthogonality " +
                  (orth ? "exact" : "FAILED")};
}

verdict c7_lfun() {
  auto ps = enumerate_primary_primes(200'000, gint{1, 0});
  double root = 0;
  for (std::size_t i = 0; i < 50 && i < ps.size(); ++i) root = std::max(root, std::abs(std::abs(root_number(ps[i])) - 1));
  double smoothing = 0;
  for (const gint& w : {gint{1, 16}, gint{-15, 32}}) {
    auto L = make_hecke_l(w);
    for (cd s : {cd(0.5, 0), cd(0.5, 7.3), cd(0.7, -12), cd(0.5, 30)}) {
      auto v = L.eval(s);
      smoothing = std::max(smoothing, v.error_estimate / std::max(1.0, std::abs(v.value)));
    }
  }
  double zk = zeta_eval(zeta_kind::dedekind, 2.0).real();
  double oracle = dedekind_ideal_sum(2.0, 2'000'000).value;
  return {root < 1e-10 && smoothing < 1e-6 && std::abs(zk - oracle) < 1e-6,
          "root numbers " + fmt("%.2e", root) + ", double smoothing " + fmt("%.2e", smoothing) + ", zeta_K(2) = " +
              fmt("%.9f", zk) + " vs ideal sum " + fmt("%.9f", oracle)};
}

verdict c8_main_terms() {
  const double grid[] = {0.05, 0.12, 0.2, 0.3, 0.45};
  double residue = 0, limit = 0;
  std::size_t points = 0;
  const double w1 = weight_function::bump().mellin(1.0).real(), X = 65536;
  for (double a : grid)
    for (double b : grid) {
      shift_params p{cd(a, 0.7), cd(b, -0.4), 0};
      if (error_exponent(p.alpha, p.beta) >= 1) p.beta += 0.5;
      ++points;
      cd m = main_term(theorem_id::ratio, p, X, w1);
      cd r = w1 * X * residue_formula(0.5 + p.alpha, 0.5 + p.beta);
      residue = std::max(residue, std::abs(m - r) / std::abs(r));
    }
  for (double a : grid) {
    cd r1 = main_term(theorem_id::ratio, {a, 50.0, 0}, X, w1), f = main_term(theorem_id::first, {a, 50.0, 0}, X, w1);
    cd r2 = main_term(theorem_id::ratio, {50.0, a, 0}, X, w1), n = main_term(theorem_id::negative, {50.0, a, 0}, X, w1);
    limit = std::max({limit, std::abs(r1 - f) / std::abs(f), std::abs(r2 - n) / std::abs(n)});
  }
  return {residue < 1e-12 && limit < 1e-8, std::to_string(points) + " grid points, residue formula " +
                                               fmt("%.2e", residue) + ", large-shift limits " + fmt("%.2e", limit)};
}

struct c9_result {
  verdict v;
  json report;
};

c9_result c9_first_moment() {
  auto w = weight_function::bump();
  experiment_options o;
  o.threads = g_threads;
  json rep = json::array();
  double first = 0, last = 0;
  std::string trail;
  auto t0 = std::chrono::steady_clock::now();
  for (int k = 12; k <= 18; ++k) {
    auto r = moment_experiment(std::ldexp(1.0, k), moment_variant::first, {}, w, o);
    double d = std::abs(r.ratio - 1.0);
    if (k == 12) first = d;
    last = d;
    trail += (trail.empty() ? "" : " ") + fmt("%.3f", d);
    rep.push_back(cli::to_json(r, false));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {{last < first && last < 0.5, "|ratio - 1| for X = 2^12..2^18: " + trail + " (" + fmt("%.0f", secs) + " s)"},
          rep};
}

verdict c10_density() {
  density_test_function h(0.8);
  auto w = weight_function::bump();
  density_options o;
  o.threads = g_threads;
  std::string d;
  bool ok = true;
  for (bool q : {false, true}) {
    double gap[2];
    std::size_t zeros = 0, certified = 0;
    for (int k = 0; k < 2; ++k) {
      auto r = density_experiment(k == 0 ? 1024 : 2048, h, w, o, q);
      gap[k] = std::abs(r.lhs.real() - r.rhs.real());
      zeros += r.zeros;
      certified += r.zeros_certified;
      d += std::string(d.empty() ? "" : "; ") + (q ? "rational" : "hecke") + " X=" + (k ? "2^11" : "2^10") +
           " D=" + fmt("%.4f", r.lhs.real()) + " RHS=" + fmt("%.4f", r.rhs.real()) + " general=" +
           fmt("%.4f", *r.rhs_general);
    }
    ok = ok && gap[1] < gap[0] && zeros == certified;
    d += " |D-RHS| " + fmt("%.4f", gap[0]) + " -> " + fmt("%.4f", gap[1]) + ", certified " + std::to_string(certified) +
         "/" + std::to_string(zeros);
  }
  return {ok, d};
}

verdict c11_cancellation() {
  auto grid = geometric_grid(1e3, 1e5, 12);
  std::string d;
  bool ok = true;
  for (const gint& r : {gint{-3, 0}, gint{3, 2}}) {
    auto f = exponent_fit(H_sample(r, 0, grid, g_threads), 0.875);
    ok = ok && !f.degenerate && f.slope < 0.95;
    d += "H slope r=" + to_string(r) + " " + fmt("%.3f", f.slope) + (f.within_reference ? "" : " (above 7/8 + 0.1)") +
         "; ";
  }
  auto fa = exponent_fit(F_sample(gint{-1, 2}, gint{-3, 0}, 0, grid, g_threads), 0.75);
  d += "F_a slope " + fmt("%.3f", fa.slope) + " vs 3/4 (recorded)";
  return {ok, d};
}

verdict c12_large_sieve() {
  auto r = large_sieve_ratio(50, 50, 20, 7);
  return {r.ratios.size() == 20 && r.max_ratio < 10, "max ratio " + fmt("%.3f", r.max_ratio) + " over 20 trials"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhecke acceptance run"};
  g_threads = std::max(1u, std::thread::hardware_concurrency());
  std::string only;
  app.add_option("--threads", g_threads, "worker threads");
  app.add_option("--only", only, "comma separated criterion numbers");
  CLI11_PARSE(app, argc, argv);

  auto wanted = [&](int k) {
    if (only.empty()) return true;
    std::string s = "," + only + ",";
    return s.find("," + std::to_string(k) + ",") != std::string::npos;
  };
  int failed = 0;
  auto emit = [&](int k, const verdict& v) {
    std::printf("criterion %2d %s  %s\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  };
  auto run = [&](int k, const std::function<verdict()>& f) {
    if (!wanted(k)) return;
    try {
      emit(k, f());
    } catch (const std::exception& e) {
      emit(k, {false, std::string("error: ") + e.what()});
    }
  };

  json c4_first, c9_first;
  run(1, c1_symbol_oracle);
  run(2, c2_reciprocity);
  run(3, c3_gauss);
  run(4, [&] {
    auto r = c4_vaughan();
    c4_first = r.report;
    return r.v;
  });
  run(5, c5_relations);
  run(6, c6_ray_class);
  run(7, c7_lfun);
  run(8, c8_main_terms);
  run(9, [&] {
    auto r = c9_first_moment();
    c9_first = r.report;
    return r.v;
  });
  run(10, c10_density);
  run(11, c11_cancellation);
  run(12, c12_large_sieve);
  run(13, [&] {
    std::string a4 = c4_first.is_null() ? c4_vaughan().report.dump() : c4_first.dump();
    std::string a9 = c9_first.is_null() ? c9_first_moment().report.dump() : c9_first.dump();
    std::string b4 = c4_vaughan().report.dump(), b9 = c9_first_moment().report.dump();
    return verdict{a4 == b4 && a9 == b9, "criterion 4 reports " + std::to_string(a4.size()) + " bytes " +
                                             (a4 == b4 ? "identical" : "DIFFER") + ", criterion 9 reports " +
                                             std::to_string(a9.size()) + " bytes " + (a9 == b9 ? "identical" : "DIFFER")};
  });
  return failed == 0 ? 0 : 1;
}
