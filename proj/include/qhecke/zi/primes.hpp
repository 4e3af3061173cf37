#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qhecke/zi/factor.hpp"

namespace qhecke {

inline constexpr int kPrimeCacheVersion = 1;

/// Rational primes up to `limit` by the sieve of Eratosthenes.
inline std::vector<std::uint32_t> rational_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

/// a^2 + b^2 = p with a odd, b even, both positive, for p = 1 mod 4 (Cornacchia).
inline std::pair<std::int64_t, std::int64_t> two_squares(std::uint64_t p) {
  std::uint64_t r0 = p, r1 = sqrt_minus_one(p);
  if (r1 > p / 2) r1 = p - r1;
  while (r1 * r1 > p) {
    std::uint64_t t = r0 % r1;
    r0 = r1;
    r1 = t;
  }
  auto a = static_cast<std::int64_t>(r1);
  auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(p - r1 * r1))));
  if (a % 2 == 0) std::swap(a, b);
  return {a, b};
}

template <class Int>
bool congruent_mod(const basic_gint<Int>& a, const basic_gint<Int>& b, const Int& m) {
  return mod_pos<Int>(a.re - b.re, m) == 0 && mod_pos<Int>(a.im - b.im, m) == 0;
}

/// Every primary prime of norm <= norm_limit, in canonical order (norm, then
/// larger real part, then larger imaginary part), optionally restricted to
/// one residue class mod 16.
inline std::vector<gint> enumerate_primary_primes(std::uint64_t norm_limit,
                                                  std::optional<gint> filter16 = std::nullopt) {
  std::vector<gint> out;
  auto keep = [&](const gint& z) { return !filter16 || congruent_mod<std::int64_t>(z, *filter16, 16); };
  for (std::uint32_t p : rational_primes(norm_limit)) {
    if (p == 2) continue;
    if (p % 4 == 1) {
      auto [a, b] = two_squares(p);
      gint w = to_primary(gint{a, b});
      for (const gint& z : {w, w.conj()})
        if (keep(z)) out.push_back(z);
    } else if (static_cast<std::uint64_t>(p) * p <= norm_limit) {
      gint z{-static_cast<std::int64_t>(p), 0};
      if (keep(z)) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [](const gint& a, const gint& b) { return canonical_less(a, b); });
  return out;
}

/// Every primary element of norm <= norm_limit, canonical order.
inline std::vector<gint> enumerate_primary_elements(std::uint64_t norm_limit) {
  std::vector<gint> out;
  auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(norm_limit))) + 1;
  for (std::int64_t a = -bound; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      gint z{a, b};
      if (static_cast<std::uint64_t>(z.norm()) <= norm_limit && is_primary(z)) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [](const gint& a, const gint& b) { return canonical_less(a, b); });
  return out;
}

/// Line-based prime table: header "qhecke-primes <version> <limit> <count>",
/// then one "a b norm" record per prime in canonical order.
inline void save_prime_cache(const std::filesystem::path& path, std::uint64_t limit,
                             const std::vector<gint>& primes) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream os(path, std::ios::trunc);
  require(static_cast<bool>(os), "save_prime_cache: cache file not writable");
  os << "qhecke-primes " << kPrimeCacheVersion << ' ' << limit << ' ' << primes.size() << '\n';
  for (const auto& z : primes) os << z.re << ' ' << z.im << ' ' << z.norm() << '\n';
}

/// Returns nullopt on a missing file, version or limit mismatch, or any
/// malformed record.
inline std::optional<std::vector<gint>> load_prime_cache(const std::filesystem::path& path,
                                                         std::uint64_t limit) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::string tag;
  int version = 0;
  std::uint64_t stored_limit = 0;
  std::size_t count = 0;
  if (!(is >> tag >> version >> stored_limit >> count)) return std::nullopt;
  if (tag != "qhecke-primes" || version != kPrimeCacheVersion || stored_limit != limit) return std::nullopt;
  std::vector<gint> out;
  out.reserve(count);
  std::int64_t a = 0, b = 0, n = 0;
  while (is >> a >> b >> n) {
    gint z{a, b};
    if (z.norm() != n) return std::nullopt;
    out.push_back(z);
  }
  if (out.size() != count) return std::nullopt;
  return out;
}

}  // namespace qhecke
