#pragma once

// L(s, chi_w) for the quartic Hecke character chi_w(a) = (a/w)_4, w = 1 mod 16,
// and L(s, chi) for the quartic Dirichlet character chi(x) = (x/w)_4 mod p = N(w).

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include "qhecke/gauss_sums.hpp"
#include "qhecke/lfun/afe.hpp"
#include "qhecke/symbols.hpp"
#include "qhecke/zi/factor.hpp"
#include "qhecke/zi/primes.hpp"

namespace qhecke {

/// Primary prime w = 1 mod 16; anything else raises domain_error.
inline void require_family_prime(const gint& w) {
  require(w.is_odd() && is_primary(w) && is_prime(w), "L-function: modulus must be a primary prime");
  require(congruent_mod<std::int64_t>(w, gint{1, 0}, 16), "L-function: modulus must be = 1 mod 16");
}

namespace detail {

/// Fills a[1..n] for a multiplicative function given its values at prime powers.
template <class PrimePower>
void multiplicative_fill(std::size_t n, std::vector<cd>& a, PrimePower&& at_prime_power) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::size_t j = i; j <= n; j += i)
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
  }
  std::vector<std::uint32_t> ppow(n + 1, 1);
  std::vector<std::uint8_t> pexp(n + 1, 0);
  a[1] = 1;
  for (std::size_t m = 2; m <= n; ++m) {
    std::uint32_t p = spf[m];
    std::size_t r = m / p;
    if (r % p == 0) {
      ppow[m] = ppow[r] * p;
      pexp[m] = static_cast<std::uint8_t>(pexp[r] + 1);
    } else {
      ppow[m] = p;
      pexp[m] = 1;
    }
    std::size_t rest = m / ppow[m];
    a[m] = (rest == 1) ? at_prime_power(p, pexp[m]) : a[rest] * a[ppow[m]];
  }
}

/// sum_{j=0..k} x^j y^(k-j) with 0^0 = 1.
inline cd split_prime_power(symbol_value x, symbol_value y, unsigned k) {
  cd acc = 0;
  for (unsigned j = 0; j <= k; ++j) {
    symbol_value px = j == 0 ? symbol_value::power(0) : (x.is_zero() ? x : symbol_value::power(x.exp * static_cast<int>(j)));
    symbol_value py =
        j == k ? symbol_value::power(0) : (y.is_zero() ? y : symbol_value::power(y.exp * static_cast<int>(k - j)));
    acc += (px * py).to_complex();
  }
  return acc;
}

}  // namespace detail

/// a_n = sum over ideals of norm n of (a/w)_4.
inline coefficient_source hecke_coefficients(const gint& w, bool conjugate = false) {
  return [w, conjugate](std::size_t n, std::vector<cd>& a) {
    struct prime_data {
      symbol_value x, y;
    };
    std::vector<prime_data> cache(n + 1);
    std::vector<bool> have(n + 1, false);
    detail::multiplicative_fill(n, a, [&](std::uint32_t p, unsigned k) -> cd {
      if (p == 2) return 1;  // (lambda/w)_4 = 1 for w = 1 mod 16
      if (!have[p]) {
        have[p] = true;
        if (p % 4 == 1) {
          auto [re, im] = two_squares(p);
          cache[p] = {quartic_symbol(gint{re, im}, w), quartic_symbol(gint{re, -im}, w)};
        } else {
          cache[p] = {quartic_symbol(gint{static_cast<std::int64_t>(p), 0}, w), {}};
        }
      }
      const auto& d = cache[p];
      cd v;
      if (p % 4 == 1) {
        v = detail::split_prime_power(d.x, d.y, k);
      } else {
        v = (k % 2) ? cd(0) : (d.x.is_zero() ? cd(0) : symbol_value::power(d.x.exp * static_cast<int>(k / 2)).to_complex());
      }
      return conjugate ? std::conj(v) : v;
    });
  };
}

/// g_{K,4}(w) N(w)^(-1/2).
inline cd root_number(const gint& w) {
  require_family_prime(w);
  auto g = gauss_sum_fast(gint{1, 0}, w, 4, gauss_variant::K).value;
  auto v = g / std::sqrt(static_cast<long double>(w.norm()));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

/// Lambda(s) = (sqrt(N w) / pi)^s Gamma(s) L(s, chi_w) = W Lambda(1 - s, conj chi_w).
inline afe_lfunction make_hecke_l(const gint& w, bool conjugate = false) {
  require_family_prime(w);
  cd root = root_number(w);
  if (conjugate) root = std::conj(root);
  double q = std::sqrt(static_cast<double>(w.norm())) / std::numbers::pi;
  return afe_lfunction(hecke_coefficients(w, conjugate), 1.0, q, root);
}

/// iota in F_p with iota = i mod w, so that (x/w)_4 = i^e when x^((p-1)/4) = iota^e.
inline std::uint64_t residue_of_i(const gint& w) {
  require(w.im != 0, "residue_of_i: w must lie over a split prime");
  auto p = static_cast<std::uint64_t>(w.norm());
  auto a = static_cast<std::uint64_t>(mod_pos<std::int64_t>(w.re, static_cast<std::int64_t>(p)));
  auto b = static_cast<std::uint64_t>(mod_pos<std::int64_t>(w.im, static_cast<std::int64_t>(p)));
  // a + b iota = 0
  return detail::mulmod(p - a, detail::inverse_mod(b, p), p);
}

/// chi(x) = (x/w)_4 for x in [0, p), as exponents of i (-1 for x = 0).
inline std::vector<int> quartic_dirichlet_table(const gint& w) {
  auto p = static_cast<std::uint64_t>(w.norm());
  const std::uint64_t iota = residue_of_i(w);
  std::uint64_t g = detail::primitive_root(p);
  std::uint64_t zeta = detail::powmod(g, (p - 1) / 4, p);
  int e0 = 0;
  for (std::uint64_t z = 1; z != zeta; z = detail::mulmod(z, iota, p)) ++e0;
  // chi(g^k) = i^(e0 k)
  std::vector<int> table(p, -1);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    table[x] = static_cast<int>((e0 * (k % 4)) % 4);
    x = detail::mulmod(x, g, p);
  }
  return table;
}

/// tau(chi) = sum_x chi(x) e(x/p).
inline cd quartic_dirichlet_gauss_sum(const gint& w) {
  auto table = quartic_dirichlet_table(w);
  const std::size_t p = table.size();
  long double re = 0, im = 0;
  for (std::size_t x = 1; x < p; ++x) {
    long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(x) / static_cast<long double>(p);
    long double c = std::cos(t), s = std::sin(t);
    switch (table[x]) {
      case 0: re += c, im += s; break;
      case 1: re -= s, im += c; break;
      case 2: re -= c, im -= s; break;
      default: re += s, im -= c; break;
    }
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// Lambda(s) = (p/pi)^(s/2) Gamma(s/2) L(s, chi) = W Lambda(1 - s, conj chi), W = tau(chi)/sqrt(p).
inline afe_lfunction make_quartic_dirichlet_l(const gint& w, bool conjugate = false) {
  require_family_prime(w);
  auto table = std::make_shared<std::vector<int>>(quartic_dirichlet_table(w));
  const double p = static_cast<double>(w.norm());
  cd root = quartic_dirichlet_gauss_sum(w) / std::sqrt(p);
  if (conjugate) root = std::conj(root);
  auto source = [table, conjugate](std::size_t n, std::vector<cd>& a) {
    const std::size_t period = table->size();
    for (std::size_t k = 1; k <= n; ++k) {
      int e = (*table)[k % period];
      a[k] = e < 0 ? cd(0) : symbol_value::power(conjugate ? -e : e).to_complex();
    }
  };
  return afe_lfunction(source, 0.5, std::sqrt(p / std::numbers::pi), root);
}

}  // namespace qhecke
