#pragma once

// Quartic and quadratic Gauss sums g_l(k, c) and g_{K,l}(k, c) over Z[i],
// with sqrt(D_K) = 2i.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qhecke/ray_class.hpp"
#include "qhecke/symbols.hpp"
#include "qhecke/zi/arith.hpp"
#include "qhecke/zi/factor.hpp"

namespace qhecke {

using cplx = std::complex<long double>;

enum class gauss_variant { plain, K };

inline const char* to_string(gauss_variant v) { return v == gauss_variant::K ? "K" : "plain"; }

struct gauss_value {
  cplx value;
  std::int64_t modulus_norm = 0;
  enum class method { direct, fast } how = method::fast;
};

/// e(t / n) for an exact rational t / n, with t reduced mod n first.
inline cplx rational_phase(__int128 t, __int128 n) {
  __int128 r = t % n;
  if (r < 0) r += n;
  long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(n);
  return {std::cos(angle), std::sin(angle)};
}

/// Numerator t with phase e(t / N(c)) of the additive character at k x / c.
/// K variant: tilde-e(kx / (2i c)) = e(Im(k x conj c) / N(c)).
/// plain variant: tilde-e(kx / c) = e(2 Re(k x conj c) / N(c)).
template <class Int>
__int128 phase_numerator(const basic_gint<Int>& kx, const basic_gint<Int>& c, gauss_variant v) {
  __int128 re = static_cast<__int128>(kx.re) * static_cast<__int128>(c.re) +
                static_cast<__int128>(kx.im) * static_cast<__int128>(c.im);
  __int128 im = static_cast<__int128>(kx.im) * static_cast<__int128>(c.re) -
                static_cast<__int128>(kx.re) * static_cast<__int128>(c.im);
  return v == gauss_variant::K ? im : 2 * re;
}

/// Direct summation over the residue box of c.
inline gauss_value gauss_sum_direct(const gint& k, const gint& c, int l, gauss_variant variant) {
  require(!c.is_zero() && c.is_odd(), "gauss_sum_direct: modulus must be odd and nonzero");
  require(l == 2 || l == 4, "gauss_sum_direct: l must be 2 or 4");
  gauss_value out;
  out.how = gauss_value::method::direct;
  out.modulus_norm = c.norm();
  if (c.is_unit()) {
    out.value = 1;
    return out;
  }
  auto box = residue_system(c);
  const __int128 n = c.norm();
  gint kr = mod(k, c);
  long double sre = 0, sim = 0;
  for (std::int64_t x = 0; x < box.real_period; ++x) {
    for (std::int64_t y = 0; y < box.imag_period; ++y) {
      gint z{x, y};
      auto chi = residue_symbol(z, c, l);
      if (chi.is_zero()) continue;
      cplx ph = rational_phase(phase_numerator(kr * z, c, variant), n);
      cplx term = ph * chi.to_complex<long double>();
      sre += term.real();
      sim += term.imag();
    }
  }
  out.value = {sre, sim};
  return out;
}

namespace detail {

inline std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  auto fs = factor_u64(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fs) {
      (void)e;
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

/// Sum of i^(e0 * k) and (-1)^k weighted phases, S[k mod 4] collected.
struct quarter_sums {
  long double re[4]{};
  long double im[4]{};
};

/// Split prime w = a + bi (N = p): residues are 0..p-1, chi(x) = i^(e0 dlog x),
/// phase e(-b x / p).
inline quarter_sums split_prime_sums(const gint& w, int& e0_out) {
  const auto p = static_cast<std::uint64_t>(w.norm());
  const std::uint64_t a = static_cast<std::uint64_t>(mod_pos<std::int64_t>(w.re, static_cast<std::int64_t>(p)));
  const std::uint64_t b = static_cast<std::uint64_t>(mod_pos<std::int64_t>(w.im, static_cast<std::int64_t>(p)));
  const std::uint64_t iota = mulmod(p - a, inverse_mod(b, p), p);  // a + b iota = 0 mod p
  const std::uint64_t g = primitive_root(p);
  const std::uint64_t zeta = powmod(g, (p - 1) / 4, p);
  int e0 = -1;
  std::uint64_t pw = 1;
  for (int e = 0; e < 4; ++e) {
    if (pw == zeta) e0 = e;
    pw = mulmod(pw, iota, p);
  }
  if (e0 < 0) throw convergence_error("split_prime_sums: i is not congruent to a fourth root of unity");
  e0_out = e0;

  thread_local std::vector<std::uint8_t> dlog4;
  dlog4.assign(p, 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k + 1 < p; ++k) {
    dlog4[x] = static_cast<std::uint8_t>(k & 3U);
    x = p < (1ULL << 32) ? (x * g) % p : mulmod(x, g, p);
  }

  // double-precision phase recurrence, resynchronized every 256 steps
  double acc_re[8]{}, acc_im[8]{};
  const double two_pi = 2.0 * std::numbers::pi;
  const std::uint64_t step = (p - b % p) % p;  // phase index advances by -b
  const double step_angle = two_pi * static_cast<double>(step) / static_cast<double>(p);
  const double cr = std::cos(step_angle), ci = std::sin(step_angle);
  double pr = 1.0, pi = 0.0;
  std::uint64_t idx = 0;
  for (std::uint64_t xx = 1; xx < p; ++xx) {
    idx += step;
    if (idx >= p) idx -= p;
    if ((xx & 255U) == 0) {
      double ang = two_pi * static_cast<double>(idx) / static_cast<double>(p);
      pr = std::cos(ang);
      pi = std::sin(ang);
    } else {
      double t = pr * cr - pi * ci;
      pi = pr * ci + pi * cr;
      pr = t;
    }
    const unsigned q = dlog4[xx] + 4U * static_cast<unsigned>(xx & 1U);
    acc_re[q] += pr;
    acc_im[q] += pi;
  }
  quarter_sums s;
  for (int q = 0; q < 4; ++q) {
    s.re[q] = static_cast<long double>(acc_re[q]) + acc_re[q + 4];
    s.im[q] = static_cast<long double>(acc_im[q]) + acc_im[q + 4];
  }
  return s;
}

/// Inert prime w = -q (N = q^2): residues x + yi in F_q[i], phase e(-y / q).
inline quarter_sums inert_prime_sums(std::int64_t q, int& e0_out) {
  const auto uq = static_cast<std::uint64_t>(q);
  const std::uint64_t order = uq * uq - 1;
  using elem = std::pair<std::uint64_t, std::uint64_t>;
  auto mul = [&](elem u, elem v) -> elem {
    return {(mulmod(u.first, v.first, uq) + uq - mulmod(u.second, v.second, uq)) % uq,
            (mulmod(u.first, v.second, uq) + mulmod(u.second, v.first, uq)) % uq};
  };
  auto power = [&](elem u, std::uint64_t e) {
    elem acc{1, 0};
    while (e != 0) {
      if (e & 1U) acc = mul(acc, u);
      u = mul(u, u);
      e >>= 1U;
    }
    return acc;
  };
  auto fs = factor_u64(order);
  elem gen{0, 0};
  for (std::uint64_t s = 1; s < uq * uq && gen == elem{0, 0}; ++s) {
    elem cand{s % uq, s / uq};
    if (cand == elem{0, 0}) continue;
    bool ok = true;
    for (auto [pp, e] : fs) {
      (void)e;
      if (power(cand, order / pp) == elem{1, 0}) {
        ok = false;
        break;
      }
    }
    if (ok) gen = cand;
  }
  elem zeta = power(gen, order / 4);
  const elem units[4] = {{1, 0}, {0, 1}, {uq - 1, 0}, {0, uq - 1}};
  int e0 = -1;
  for (int e = 0; e < 4; ++e)
    if (zeta == units[e]) e0 = e;
  if (e0 < 0) throw convergence_error("inert_prime_sums: generator power is not a unit");
  e0_out = e0;

  std::vector<std::complex<long double>> table(uq);
  for (std::uint64_t y = 0; y < uq; ++y) {
    long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(y) / static_cast<long double>(uq);
    table[y] = {std::cos(ang), std::sin(ang)};
  }
  quarter_sums s;
  elem x{1, 0};
  for (std::uint64_t k = 0; k < order; ++k) {
    const auto& ph = table[x.second];
    s.re[k & 3U] += ph.real();
    s.im[k & 3U] += ph.imag();
    x = mul(x, gen);
  }
  return s;
}

inline cplx combine(const quarter_sums& s, int e0, int m) {
  cplx acc{0, 0};
  for (int j = 0; j < 4; ++j) {
    cplx chi = symbol_value::power(e0 * j * m).to_complex<long double>();
    acc += chi * cplx{s.re[j], s.im[j]};
  }
  return acc;
}

}  // namespace detail

/// g_{K,4}(w) and g_{K,2}(w) at k = 1 for a primary prime w.
struct prime_gauss {
  cplx g4;
  cplx g2;
};

inline prime_gauss prime_gauss_compute(const gint& w) {
  require(w.is_odd() && is_primary(w) && is_prime(w), "prime_gauss: argument must be a primary prime");
  int e0 = 0;
  detail::quarter_sums s;
  if (w.im == 0) {
    s = detail::inert_prime_sums(-w.re, e0);
  } else {
    s = detail::split_prime_sums(w, e0);
  }
  return {detail::combine(s, e0, 1), detail::combine(s, e0, 2)};
}

/// Concurrent memo of prime Gauss sums; inserts are idempotent.
class gauss_cache {
 public:
  prime_gauss get(const gint& w) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(w);
      if (it != map_.end()) return it->second;
    }
    prime_gauss v = prime_gauss_compute(w);
    std::unique_lock lock(mutex_);
    map_.emplace(w, v);
    // g(1, conj w) = conj g(1, w)
    if (w.im != 0) map_.emplace(w.conj(), prime_gauss{std::conj(v.g4), std::conj(v.g2)});
    return v;
  }

  bool contains(const gint& w) const {
    std::shared_lock lock(mutex_);
    return map_.count(w) != 0;
  }

  void put(const gint& w, const prime_gauss& v) {
    std::unique_lock lock(mutex_);
    map_[w] = v;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  std::vector<std::pair<gint, prime_gauss>> snapshot() const {
    std::shared_lock lock(mutex_);
    std::vector<std::pair<gint, prime_gauss>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
    return out;
  }

  /// Records "c_re c_im k_re k_im l variant value_re value_im precision_tag"
  /// for k = 1, variant K, l = 2 and 4.
  void save(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream os(path, std::ios::trunc);
    require(static_cast<bool>(os), "gauss_cache: cache file not writable");
    os << "qhecke-gauss " << kVersion << '\n';
    os.precision(21);
    for (const auto& [w, v] : snapshot()) {
      os << w.re << ' ' << w.im << " 1 0 4 K " << v.g4.real() << ' ' << v.g4.imag() << " ld64\n";
      os << w.re << ' ' << w.im << " 1 0 2 K " << v.g2.real() << ' ' << v.g2.imag() << " ld64\n";
    }
  }

  /// Returns false (leaving the cache untouched) on any mismatch.
  bool load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) return false;
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "qhecke-gauss" || version != kVersion) return false;
    std::unordered_map<gint, prime_gauss> loaded;
    std::int64_t cre = 0, cim = 0, kre = 0, kim = 0;
    int l = 0;
    std::string variant, prec;
    long double vre = 0, vim = 0;
    while (is >> cre >> cim >> kre >> kim >> l >> variant >> vre >> vim >> prec) {
      if (kre != 1 || kim != 0 || variant != "K" || prec != "ld64") return false;
      auto& slot = loaded[gint{cre, cim}];
      if (l == 4) {
        slot.g4 = {vre, vim};
      } else if (l == 2) {
        slot.g2 = {vre, vim};
      } else {
        return false;
      }
    }
    std::unique_lock lock(mutex_);
    for (auto& [w, v] : loaded) map_[w] = v;
    return true;
  }

  static constexpr int kVersion = 1;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<gint, prime_gauss> map_;
};

inline gauss_cache& global_gauss_cache() {
  static gauss_cache cache;
  return cache;
}

/// Gauss sum at k = 1 of the character (./w)_4^m mod a primary prime w.
inline cplx prime_character_gauss(const gint& w, int m, gauss_cache& cache = global_gauss_cache()) {
  m = ((m % 4) + 4) % 4;
  if (m == 0) return -1;
  auto g = cache.get(w);
  if (m == 1) return g.g4;
  if (m == 2) return g.g2;
  // chi(-1) conj(g4)
  auto sign = quartic_symbol(gint{-1, 0}, w).to_complex<long double>();
  return sign * std::conj(g.g4);
}

/// g_{K,l}(k, w^ell) for a primary prime w.
inline cplx prime_power_gauss_k(const gint& k, const gint& w, unsigned ell, int l,
                                gauss_cache& cache = global_gauss_cache()) {
  if (ell == 0) return 1;
  const int m = static_cast<int>(((4 / l) * ell) % 4);
  std::int64_t nw = w.norm();
  unsigned v = 0;
  bool infinite = k.is_zero();
  gint kp = k;
  if (!infinite) {
    while (v < ell) {
      auto [q, r] = div_rem(kp, w);
      if (!r.is_zero()) break;
      kp = q;
      ++v;
    }
  }
  // k = w^v k' with (k', w) = 1: conj((k'/w^ell)_l) = conj((k'/w)_4^m)
  cplx twist = 1;
  if (!infinite && v < ell && m != 0)
    twist = symbol_value::power(-quartic_symbol(kp, w).exp * m).to_complex<long double>();
  if (infinite || v >= ell) {
    if (m != 0) return 0;
    long double phi = static_cast<long double>(nw - 1);
    for (unsigned e = 1; e < ell; ++e) phi *= static_cast<long double>(nw);
    return phi;
  }
  if (v + 1 != ell) return 0;
  long double scale = 1;
  for (unsigned e = 0; e < v; ++e) scale *= static_cast<long double>(nw);
  if (m == 0) return -scale * twist;
  return scale * twist * prime_character_gauss(w, m, cache);
}

/// The six-case table g_{K,4}(w^k, w^ell) for a primary prime w.
inline cplx prime_power_gauss(const gint& w, unsigned k_exp, unsigned ell, gauss_cache& cache = global_gauss_cache()) {
  require(w.is_odd() && is_primary(w) && is_prime(w), "prime_power_gauss: argument must be a primary prime");
  return prime_power_gauss_k(gpow(w, k_exp), w, ell, 4, cache);
}

/// (2i / c)_l, the twist between the two Gauss sum normalizations.
inline symbol_value sqrt_disc_symbol(const gint& c, int l) { return residue_symbol(gint{0, 2}, c, l); }

/// Factorization-driven evaluation: associate change, CRT split over the
/// prime powers of c, closed forms on each prime power.
inline gauss_value gauss_sum_fast(const gint& k, const gint& c, int l, gauss_variant variant,
                                  gauss_cache& cache = global_gauss_cache()) {
  require(!c.is_zero() && c.is_odd(), "gauss_sum_fast: modulus must be odd and nonzero");
  require(l == 2 || l == 4, "gauss_sum_fast: l must be 2 or 4");
  gauss_value out;
  out.modulus_norm = c.norm();
  auto split = split_lambda(c);
  // c = u p  =>  g(k, c) = g(k conj(u), p)
  gint kk = k * unit_power<std::int64_t>(-split.unit_exp);
  cplx acc = 1;
  gint done{1, 0};
  for (const auto& [w, e] : factor(split.odd).factors) {
    gint q = gpow(w, e);
    acc *= prime_power_gauss_k(kk, w, e, l, cache);
    if (acc == cplx{0, 0}) break;
    if (!done.is_unit()) {
      auto cross = residue_symbol(done, q, l) * residue_symbol(q, done, l);
      acc *= cross.to_complex<long double>();
    }
    done *= q;
  }
  if (variant == gauss_variant::plain) acc *= std::conj(sqrt_disc_symbol(c, l).to_complex<long double>());
  out.value = acc;
  return out;
}

/// g~_psi(r, c) = g_{K,4}(r, c) psi(c) N(c)^(-1/2).
inline cplx gauss_tilde(const gint& r, const gint& c, std::size_t psi, gauss_cache& cache = global_gauss_cache()) {
  auto g = gauss_sum_fast(r, c, 4, gauss_variant::K, cache).value;
  auto chi = ray_class_16().char_eval(psi, c);
  return g * cplx{chi.real(), chi.imag()} / std::sqrt(static_cast<long double>(c.norm()));
}

}  // namespace qhecke
