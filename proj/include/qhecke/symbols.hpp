#pragma once

// Quartic and quadratic residue symbols on Z[i].

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qhecke/zi/arith.hpp"
#include "qhecke/zi/factor.hpp"

namespace qhecke {

/// An element of {0, 1, i, -1, -i}; nonzero values are stored as i^exp.
struct symbol_value {
  bool zero = false;
  int exp = 0;

  static constexpr symbol_value zero_value() { return {true, 0}; }
  static constexpr symbol_value power(int e) { return {false, ((e % 4) + 4) % 4}; }

  bool is_zero() const { return zero; }

  friend symbol_value operator*(const symbol_value& a, const symbol_value& b) {
    if (a.zero || b.zero) return zero_value();
    return power(a.exp + b.exp);
  }
  symbol_value conj() const { return zero ? *this : power(-exp); }
  symbol_value squared() const { return *this * *this; }

  friend bool operator==(const symbol_value& a, const symbol_value& b) {
    return a.zero == b.zero && (a.zero || a.exp == b.exp);
  }

  template <class T = double>
  std::complex<T> to_complex() const {
    if (zero) return {0, 0};
    switch (exp) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  std::string str() const {
    if (zero) return "0";
    static const char* names[] = {"1", "i", "-1", "-i"};
    return names[exp];
  }
};

/// Exponent of (i/n)_4 for primary n = x + yi.
template <class Int>
int supplement_i(const basic_gint<Int>& n) {
  Int e = (Int(1) - n.re) / 2;
  return static_cast<int>(mod_pos<Int>(e, Int(4)));
}

/// Exponent of ((1+i)/n)_4 for primary n = x + yi.
template <class Int>
int supplement_lambda(const basic_gint<Int>& n) {
  Int e = (n.re - n.im - 1 - n.im * n.im) / 4;
  return static_cast<int>(mod_pos<Int>(e, Int(4)));
}

/// (N(z) - 1)/4 mod 2 for primary z.
template <class Int>
int quarter_norm_parity(const basic_gint<Int>& z) {
  Int q = (z.norm() - 1) / 4;
  return static_cast<int>(mod_pos<Int>(q, Int(2)));
}

/// C(alpha, gamma) = ((N(alpha)-1)/4)((N(gamma)-1)/4); both arguments primary.
template <class Int>
Int c_exponent(const basic_gint<Int>& alpha, const basic_gint<Int>& gamma) {
  require(alpha.is_odd() && is_primary(alpha) && gamma.is_odd() && is_primary(gamma),
          "c_exponent: arguments must be primary");
  return ((alpha.norm() - 1) / 4) * ((gamma.norm() - 1) / 4);
}

template <class Int>
int c_parity(const basic_gint<Int>& alpha, const basic_gint<Int>& gamma) {
  require(alpha.is_odd() && is_primary(alpha) && gamma.is_odd() && is_primary(gamma),
          "c_parity: arguments must be primary");
  return quarter_norm_parity(alpha) & quarter_norm_parity(gamma);
}

/// rho_a(b) = (-1)^C(a,b) for coprime primary a, b.
template <class Int>
int rho(const basic_gint<Int>& a, const basic_gint<Int>& b) {
  require(coprime(a, b), "rho: arguments must be coprime");
  return c_parity(a, b) != 0 ? -1 : 1;
}

/// (a/n)_4 for odd n by reciprocity; the denominator is replaced by its
/// primary associate, and (a/u)_4 = 1 for units u.
template <class Int>
symbol_value quartic_symbol(basic_gint<Int> a, const basic_gint<Int>& n_in) {
  require(!n_in.is_zero(), "quartic_symbol: denominator must be nonzero");
  require(n_in.is_odd(), "quartic_symbol: denominator must be odd");
  basic_gint<Int> n = to_primary(n_in);
  int e = 0;
  for (;;) {
    if (n.is_unit()) return symbol_value::power(e);
    a = mod(a, n);
    if (a.is_zero()) return symbol_value::zero_value();
    auto split = split_lambda(a);
    e += split.unit_exp * supplement_i(n);
    e += static_cast<int>(split.lambda_exp % 4) * supplement_lambda(n);
    if ((quarter_norm_parity(split.odd) & quarter_norm_parity(n)) != 0) e += 2;
    a = n;
    n = split.odd;
    e %= 4;
  }
}

template <class Int>
symbol_value quadratic_symbol(const basic_gint<Int>& a, const basic_gint<Int>& n) {
  return quartic_symbol(a, n).squared();
}

/// Residue symbol of order l in {2, 4}.
template <class Int>
symbol_value residue_symbol(const basic_gint<Int>& a, const basic_gint<Int>& n, int l) {
  require(l == 2 || l == 4, "residue_symbol: l must be 2 or 4");
  auto v = quartic_symbol(a, n);
  return l == 4 ? v : v.squared();
}

template <class Int>
basic_gint<Int> pow_mod(basic_gint<Int> base, bigint e, const basic_gint<Int>& m) {
  basic_gint<Int> acc = mod(basic_gint<Int>{1, 0}, m);
  base = mod(base, m);
  while (e != 0) {
    if ((e & 1) != 0) acc = mod(acc * base, m);
    e >>= 1;
    if (e != 0) base = mod(base * base, m);
  }
  return acc;
}

/// a^((N(w)-1)/4) mod w matched against the four units, multiplied over the
/// prime factorization of n. Test oracle only.
template <class Int>
symbol_value brute_force_symbol(const basic_gint<Int>& a, const basic_gint<Int>& n) {
  require(!n.is_zero() && n.is_odd(), "brute_force_symbol: denominator must be odd and nonzero");
  symbol_value acc = symbol_value::power(0);
  if (n.is_unit()) return acc;
  for (const auto& [w, mult] : factor(n).factors) {
    bigint e = (bigint(w.norm()) - 1) / 4;
    basic_gint<Int> r = pow_mod(a, e, w);
    symbol_value v;
    if (r.is_zero()) {
      v = symbol_value::zero_value();
    } else {
      bool found = false;
      for (int k = 0; k < 4; ++k) {
        if (mod(r - unit_power<Int>(k), w).is_zero()) {
          v = symbol_value::power(k);
          found = true;
          break;
        }
      }
      if (!found) throw convergence_error("brute_force_symbol: residue matches no unit");
    }
    for (unsigned k = 0; k < mult; ++k) acc = acc * v;
  }
  return acc;
}

/// Largest ratio LHS / ((M+N) sum |a_n|^2) of the quadratic large sieve over
/// squarefree m, n = 1 mod 2, for random complex Gaussian coefficients.
struct large_sieve_result {
  double max_ratio = 0.0;
  std::vector<double> ratios;
  std::size_t m_count = 0;
  std::size_t n_count = 0;
};

inline std::vector<gint> squarefree_one_mod_two(std::uint64_t norm_limit) {
  std::vector<gint> out;
  auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(norm_limit))) + 1;
  for (std::int64_t a = -bound; a <= bound; ++a) {
    if (mod_pos<std::int64_t>(a, 2) != 1) continue;
    for (std::int64_t b = -bound; b <= bound; b += 1) {
      if (mod_pos<std::int64_t>(b, 2) != 0) continue;
      gint z{a, b};
      if (static_cast<std::uint64_t>(z.norm()) > norm_limit) continue;
      if (z.is_unit() || is_squarefree(z)) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [](const gint& x, const gint& y) { return canonical_less(x, y); });
  return out;
}

inline large_sieve_result large_sieve_ratio(std::uint64_t M, std::uint64_t N, int trials, std::uint64_t seed,
                                            bool zero_coefficients = false) {
  require(M >= 1 && N >= 1, "large_sieve_ratio: M and N must be at least 1");
  require(trials >= 1, "large_sieve_ratio: trials must be positive");
  auto ms = squarefree_one_mod_two(M);
  auto ns = squarefree_one_mod_two(N);
  std::vector<std::vector<int>> table(ms.size(), std::vector<int>(ns.size()));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t k = 0; k < ns.size(); ++k) {
      auto v = quadratic_symbol(ns[k], ms[i]);
      table[i][k] = v.is_zero() ? 0 : (v.exp == 0 ? 1 : -1);
    }
  }
  large_sieve_result out;
  out.m_count = ms.size();
  out.n_count = ns.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    std::vector<std::complex<double>> coeff(ns.size());
    double energy = 0.0;
    for (auto& c : coeff) {
      double re = normal(rng), im = normal(rng);
      c = zero_coefficients ? std::complex<double>{} : std::complex<double>{re, im};
      energy += std::norm(c);
    }
    double lhs = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::complex<double> inner{};
      for (std::size_t k = 0; k < ns.size(); ++k) inner += coeff[k] * static_cast<double>(table[i][k]);
      lhs += std::norm(inner);
    }
    double ratio = energy == 0.0 ? 0.0 : lhs / (static_cast<double>(M + N) * energy);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

}  // namespace qhecke
