#pragma once

// Primality and factorization, first over Z (deterministic Miller-Rabin and
// Brent's Pollard rho on 64-bit norms, cpp_int fallback), then lifted to Z[i].

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "qhecke/zi/gint.hpp"

namespace qhecke {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t brent_rho(std::uint64_t n, std::uint64_t c) {
  if (n % 2 == 0) return 2;
  auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
  std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
  const std::uint64_t m = 128;
  std::uint64_t r = 1;
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    do {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

inline void factor_u64_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t d = brent_rho(n, c);
    if (d != n && d != 1) {
      factor_u64_into(d, out);
      factor_u64_into(n / d, out);
      return;
    }
  }
}

template <class Int>
std::vector<std::pair<Int, unsigned>> collect(std::vector<Int> primes) {
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, unsigned>> out;
  for (auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1U);
    }
  }
  return out;
}

}  // namespace detail

/// Prime factorization of n >= 1 as ascending (p, e) pairs.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  require(n >= 1, "factor_u64: argument must be positive");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_u64_into(n, primes);
  return detail::collect(std::move(primes));
}

namespace detail {

inline bigint big_rho(const bigint& n, unsigned c) {
  if (n % 2 == 0) return 2;
  bigint x = 2, y = 2, d = 1;
  auto f = [&](const bigint& v) { return bigint((v * v + c) % n); };
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    d = boost::integer::gcd(bigint(x > y ? x - y : y - x), n);
  }
  return d;
}

inline bool big_is_prime(const bigint& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(static_cast<std::uint64_t>(n));
  return boost::multiprecision::miller_rabin_test(n, 40);
}

inline void factor_big_into(const bigint& n, std::vector<bigint>& out) {
  if (n == 1) return;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    std::vector<std::uint64_t> small;
    factor_u64_into(static_cast<std::uint64_t>(n), small);
    for (auto p : small) out.emplace_back(p);
    return;
  }
  if (big_is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (unsigned c = 1;; ++c) {
    bigint d = big_rho(n, c);
    if (d != n && d != 1) {
      factor_big_into(d, out);
      factor_big_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

/// Rational factorization over either backend.
template <class Int>
std::vector<std::pair<Int, unsigned>> factor_rational(Int n) {
  require(n >= 1, "factor_rational: argument must be positive");
  if constexpr (std::is_same_v<Int, bigint>) {
    std::vector<bigint> primes;
    for (unsigned p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
      while (n % p == 0) {
        primes.emplace_back(p);
        n /= p;
      }
    }
    detail::factor_big_into(n, primes);
    return detail::collect(std::move(primes));
  } else {
    std::vector<std::pair<Int, unsigned>> out;
    for (auto [p, e] : factor_u64(static_cast<std::uint64_t>(n))) out.emplace_back(static_cast<Int>(p), e);
    return out;
  }
}

template <class Int>
bool is_prime_rational(const Int& n) {
  if (n < 2) return false;
  if constexpr (std::is_same_v<Int, bigint>) {
    return detail::big_is_prime(n);
  } else {
    return is_prime_u64(static_cast<std::uint64_t>(n));
  }
}

/// (z) is a prime ideal: N(z) prime, or z an associate of a rational prime p = 3 mod 4.
template <class Int>
bool is_prime(const basic_gint<Int>& z) {
  require(!z.is_zero(), "is_prime: argument must be nonzero");
  Int n = z.norm();
  if (is_prime_rational(n)) return true;
  if (z.re != 0 && z.im != 0) return false;
  Int p = z.re != 0 ? z.re : z.im;
  if (p < 0) p = -p;
  return p % 4 == 3 && is_prime_rational(p);
}

/// x with x^2 = -1 mod p, p = 1 mod 4 prime.
inline std::uint64_t sqrt_minus_one(std::uint64_t p) {
  require(p % 4 == 1, "sqrt_minus_one: p must be 1 mod 4");
  for (std::uint64_t c = 2;; ++c) {
    if (detail::powmod(c, (p - 1) / 2, p) == p - 1) return detail::powmod(c, (p - 1) / 4, p);
  }
}

/// Primary prime above a rational prime p = 1 mod 4 (the other is its conjugate).
template <class Int>
basic_gint<Int> prime_above(const Int& p) {
  if constexpr (std::is_same_v<Int, bigint>) {
    // Cornacchia-free route: gcd(p, x + i) with x^2 = -1 mod p
    bigint c = 2;
    bigint x;
    for (;; ++c) {
      if (boost::multiprecision::powm(c, (p - 1) / 2, p) == p - 1) {
        x = boost::multiprecision::powm(c, (p - 1) / 4, p);
        break;
      }
    }
    return to_primary(gcd(basic_gint<Int>{p, 0}, basic_gint<Int>{x, 1}));
  } else {
    auto x = static_cast<Int>(sqrt_minus_one(static_cast<std::uint64_t>(p)));
    return to_primary(gcd(basic_gint<Int>{p, 0}, basic_gint<Int>{x, 1}));
  }
}

/// Canonical order on primary primes: ascending norm, then larger real part,
/// then larger imaginary part.
template <class Int>
bool canonical_less(const basic_gint<Int>& a, const basic_gint<Int>& b) {
  Int na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.re != b.re) return a.re > b.re;
  return a.im > b.im;
}

/// z = i^unit_exp * lambda^lambda_exp * prod factors[k].first^factors[k].second,
/// with every listed prime primary and pairwise non-associate.
template <class Int>
struct basic_factorization {
  int unit_exp = 0;
  unsigned lambda_exp = 0;
  std::vector<std::pair<basic_gint<Int>, unsigned>> factors;

  basic_gint<Int> unit() const { return unit_power<Int>(unit_exp); }

  basic_gint<Int> odd_part() const {
    basic_gint<Int> acc{1, 0};
    for (const auto& [p, e] : factors) acc *= gpow(p, e);
    return acc;
  }

  basic_gint<Int> recompose() const { return unit() * gpow(kLambda<Int>, lambda_exp) * odd_part(); }

  bool squarefree_odd() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.second == 1; });
  }
};

using factorization = basic_factorization<std::int64_t>;

/// Lifts a rational factorization of N(odd) to the primary prime factors of `odd`.
template <class Int, class RationalFactors>
std::vector<std::pair<basic_gint<Int>, unsigned>> lift_odd_factors(basic_gint<Int> odd,
                                                                   const RationalFactors& norm_factors) {
  std::vector<std::pair<basic_gint<Int>, unsigned>> out;
  for (const auto& [p_raw, e] : norm_factors) {
    Int p = static_cast<Int>(p_raw);
    if (p == 2) continue;
    if (p % 4 == 3) {
      out.emplace_back(basic_gint<Int>{Int(-p), Int(0)}, e / 2);
      for (unsigned k = 0; k < e / 2; ++k) odd = exact_div(odd, basic_gint<Int>{p, 0});
      continue;
    }
    basic_gint<Int> w = prime_above(p);
    for (const auto& cand : {w, w.conj()}) {
      unsigned v = 0;
      for (;;) {
        auto [q, r] = div_rem(odd, cand);
        if (!r.is_zero()) break;
        odd = q;
        ++v;
      }
      if (v != 0) out.emplace_back(cand, v);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

template <class Int>
basic_factorization<Int> factor(const basic_gint<Int>& z) {
  require(!z.is_zero(), "factor: argument must be nonzero");
  auto split = split_lambda(z);
  basic_factorization<Int> out;
  out.lambda_exp = split.lambda_exp;
  if (!split.odd.is_unit()) out.factors = lift_odd_factors(split.odd, factor_rational(Int(split.odd.norm())));
  // the odd part of split is primary and so is the product of primary primes
  out.unit_exp = split.unit_exp;
  return out;
}

/// Smallest-prime-factor table over [0, limit] for bulk factoring of small norms.
class norm_sieve {
 public:
  explicit norm_sieve(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf_[j] == 0) spf_[j] = i;
    }
  }

  std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
  bool is_prime(std::uint32_t n) const { return n >= 2 && n <= limit() && spf_[n] == n; }

  std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint32_t n) const {
    require(n >= 1 && n <= limit(), "norm_sieve::factor: argument outside sieve");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    while (n > 1) {
      std::uint32_t p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }

  /// Factorization of an element with N(z) inside the sieve.
  factorization factor_gint(const gint& z) const {
    auto split = split_lambda(z);
    factorization out;
    out.lambda_exp = split.lambda_exp;
    out.unit_exp = split.unit_exp;
    if (!split.odd.is_unit())
      out.factors = lift_odd_factors(split.odd, factor(static_cast<std::uint32_t>(split.odd.norm())));
    return out;
  }

 private:
  std::vector<std::uint32_t> spf_;
};

}  // namespace qhecke
