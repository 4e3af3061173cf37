#pragma once

// Partial sums and truncated Dirichlet series of quartic Gauss sums, the
// Vaughan decomposition of H_{2Z} - H_Z, and log-log exponent fits.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qhecke/gauss_sums.hpp"
#include "qhecke/parallel.hpp"
#include "qhecke/ray_class.hpp"
#include "qhecke/symbols.hpp"
#include "qhecke/zi/arith.hpp"
#include "qhecke/zi/primes.hpp"

namespace qhecke {

using cd = std::complex<double>;

inline cd to_cd(const cplx& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

/// g_{K,4}(r, c).
inline cd gauss_k4(const gint& r, const gint& c) { return to_cd(gauss_sum_fast(r, c, 4, gauss_variant::K).value); }

/// lo, ..., hi with constant ratio.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  require(n >= 2 && lo > 0 && hi > lo, "geometric_grid: need n >= 2 and 0 < lo < hi");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  g.back() = hi;
  return g;
}

struct series_sample {
  std::string context;
  std::vector<double> grid;
  std::vector<cd> values;
  /// max over Z' <= grid[i] of |partial sum at Z'|.
  std::vector<double> running_max;
  std::size_t terms = 0;
};

// ---------------------------------------------------------------- H_Z

/// Terms log N(w) psi(w) g_{K,4}(r, w) N(w)^(-1/2) over primary primes w, (w, r) = 1, N(w) <= Z.
inline series_sample H_sample(const gint& r, std::size_t psi, const std::vector<double>& grid,
                              unsigned threads = 1) {
  require(is_primary(r) && r.is_odd(), "H: r must be primary");
  require(!grid.empty() && std::is_sorted(grid.begin(), grid.end()), "H: grid must be increasing");
  const auto& rc = ray_class_16();
  require(psi < rc.characters.size(), "H: character index out of range");
  auto primes = enumerate_primary_primes(static_cast<std::uint64_t>(grid.back()));
  std::vector<cd> term(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    const gint& w = primes[i];
    auto [q, rem] = div_rem(r, w);
    if (rem.is_zero()) return;
    const double nw = static_cast<double>(w.norm());
    cd g = to_cd(prime_power_gauss_k(r, w, 1, 4));
    term[i] = std::log(nw) * rc.char_eval(psi, w) * g / std::sqrt(nw);
  });
  series_sample out;
  out.context = "H r=" + to_string(r) + " psi=" + std::to_string(psi);
  out.grid = grid;
  cd acc = 0;
  double mx = 0;
  std::size_t k = 0;
  for (double z : grid) {
    while (k < primes.size() && static_cast<double>(primes[k].norm()) <= z) {
      acc += term[k++];
      mx = std::max(mx, std::abs(acc));
    }
    out.values.push_back(acc);
    out.running_max.push_back(mx);
  }
  out.terms = k;
  return out;
}

inline cd H_partial(const gint& r, std::size_t psi, double Z, unsigned threads = 1) {
  require(Z >= 0, "H_partial: Z must be nonnegative");
  if (Z < 2) return 0;
  return H_sample(r, psi, {Z}, threads).values.front();
}

/// sum over primary primes w, (w, r) = 1, N(w) <= norm_cap of log N(w) psi(w) g_{K,4}(r, w) N(w)^-s.
inline cd H_truncated(const gint& r, cd s, std::size_t psi, std::uint64_t norm_cap, unsigned threads = 1) {
  require(is_primary(r) && r.is_odd(), "H: r must be primary");
  const auto& rc = ray_class_16();
  auto primes = enumerate_primary_primes(norm_cap);
  std::vector<cd> term(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    const gint& w = primes[i];
    if (div_rem(r, w).second.is_zero()) return;
    const double nw = static_cast<double>(w.norm());
    term[i] = std::log(nw) * rc.char_eval(psi, w) * to_cd(prime_power_gauss_k(r, w, 1, 4)) * std::exp(-s * std::log(nw));
  });
  cd acc = 0;
  for (const auto& t : term) acc += t;
  return acc;
}

// ---------------------------------------------------------------- F_a

/// sum over primary b, a | b, (b, r) = 1, N(b) <= z of g~_psi(r, b), sampled on a grid.
inline series_sample F_sample(const gint& a, const gint& r, std::size_t psi, const std::vector<double>& grid,
                              unsigned threads = 1) {
  require(is_primary(a) && a.is_odd() && is_squarefree(a), "F: a must be primary and squarefree");
  require(is_primary(r) && r.is_odd(), "F: r must be primary");
  require(coprime(a, r), "F: (a, r) must be 1");
  require(!grid.empty() && std::is_sorted(grid.begin(), grid.end()), "F: grid must be increasing");
  const auto& rc = ray_class_16();
  const auto na = static_cast<double>(a.norm());
  std::vector<gint> bs;
  if (grid.back() >= na) {
    for (const gint& bp : enumerate_primary_elements(static_cast<std::uint64_t>(grid.back() / na))) {
      gint b = a * bp;
      if (!coprime(bp, a) || !coprime(b, r)) continue;  // b not squarefree, or shares a prime with r
      bs.push_back(b);
    }
  }
  std::sort(bs.begin(), bs.end(), [](const gint& x, const gint& y) { return canonical_less(x, y); });
  std::vector<cd> term(bs.size());
  parallel_for(bs.size(), threads, [&](std::size_t i) {
    const gint& b = bs[i];
    if (!is_squarefree(b)) return;
    term[i] = gauss_k4(r, b) * rc.char_eval(psi, b) / std::sqrt(static_cast<double>(b.norm()));
  });
  series_sample out;
  out.context = "F a=" + to_string(a) + " r=" + to_string(r) + " psi=" + std::to_string(psi);
  out.grid = grid;
  cd acc = 0;
  double mx = 0;
  std::size_t k = 0;
  for (double z : grid) {
    while (k < bs.size() && static_cast<double>(bs[k].norm()) <= z) {
      acc += term[k++];
      mx = std::max(mx, std::abs(acc));
    }
    out.values.push_back(acc);
    out.running_max.push_back(mx);
  }
  out.terms = k;
  return out;
}

inline cd F_partial(const gint& a, double z, const gint& r, std::size_t psi, unsigned threads = 1) {
  return F_sample(a, r, psi, {std::max(z, 1.0)}, threads).values.front();
}

// ---------------------------------------------------------------- Vaughan

struct vaughan_decomposition {
  double Z = 0.0;
  double u = 0.0;
  gint r;
  std::size_t psi = 0;
  cd sigma0, sigma1, sigma2p, sigma2pp, sigma3, sigma4;
  /// Sigma_4 under the literal range N(a) < N(bc) <= u.
  cd sigma4_as_printed;
  std::size_t terms = 0;

  cd identity_rhs() const { return sigma1 - sigma2p - sigma2pp - sigma3 + sigma4; }
  double identity_residual() const {
    return std::abs(sigma0 - identity_rhs()) / std::max(std::abs(sigma0), 1e-300);
  }
};

namespace detail {

enum vaughan_slot { kS0, kS1, kS2p, kS2pp, kS3, kS4, kS4Printed, kSlots };

/// sum over n = abc (a prime) of Lambda(a) mu(b) [range_k] for squarefree n with the given prime norms.
inline std::array<double, kSlots> vaughan_weights(const std::vector<double>& norms, double u) {
  std::array<double, kSlots> w{};
  const std::size_t k = norms.size();
  double total = 1;
  for (double x : norms) total *= x;
  for (std::size_t ia = 0; ia < k; ++ia) {
    const double na = norms[ia], la = std::log(na);
    std::vector<double> rest;
    for (std::size_t j = 0; j < k; ++j)
      if (j != ia) rest.push_back(norms[j]);
    for (std::uint32_t mask = 0; mask < (1U << rest.size()); ++mask) {
      double nb = 1;
      int sign = 1;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (mask & (1U << j)) {
          nb *= rest[j];
          sign = -sign;
        }
      }
      const double nbc = total / na;
      const double nab = na * nb;
      const double c = sign * la;
      if (nbc <= u) w[kS0] += c;
      if (nb <= u) w[kS1] += c;
      if (nab <= u) w[kS2p] += c;
      if (na <= u && nb <= u && nab > u) w[kS2pp] += c;
      if (nb <= u && na > u && nbc > u) w[kS3] += c;
      if (na <= u && nbc <= u) w[kS4] += c;
      if (na < nbc && nbc <= u) w[kS4Printed] += c;
    }
  }
  return w;
}

}  // namespace detail

/// All six sums for every ray class character at once; element psi of the result is psi_psi.
inline std::vector<vaughan_decomposition> vaughan_decompose_all(double Z, const gint& r, double u,
                                                                unsigned threads = 1,
                                                                std::uint64_t max_norm = 2'000'000) {
  require(Z >= 1 && u >= 1, "vaughan: need Z >= 1 and u >= 1");
  require(is_primary(r) && r.is_odd(), "vaughan: r must be primary");
  require(2 * Z <= static_cast<double>(max_norm),
          "vaughan: 2Z above the enumeration limit (cost grows like Z)");
  const auto& rc = ray_class_16();
  const auto top = static_cast<std::uint64_t>(std::floor(2 * Z));
  norm_sieve sieve(static_cast<std::uint32_t>(top));
  std::vector<gint> ns;
  for (const gint& n : enumerate_primary_elements(top))
    if (static_cast<double>(n.norm()) > Z && coprime(n, r)) ns.push_back(n);

  struct slot {
    int cls = -1;
    std::array<double, detail::kSlots> w{};
    cd g;
  };
  std::vector<slot> data(ns.size());
  parallel_for(ns.size(), threads, [&](std::size_t i) {
    const gint& n = ns[i];
    auto f = sieve.factor_gint(n);
    if (!f.squarefree_odd()) return;
    std::vector<double> norms;
    for (const auto& [p, e] : f.factors) norms.push_back(static_cast<double>(p.norm()));
    data[i].cls = rc.class_of(n);
    data[i].w = detail::vaughan_weights(norms, u);
    data[i].g = gauss_k4(r, n) / std::sqrt(static_cast<double>(n.norm()));
  });

  std::vector<std::array<cd, detail::kSlots>> by_class(rc.order());
  std::size_t terms = 0;
  for (const auto& d : data) {
    if (d.cls < 0) continue;
    ++terms;
    for (int k = 0; k < detail::kSlots; ++k) by_class[d.cls][k] += d.w[k] * d.g;
  }
  std::vector<vaughan_decomposition> out(rc.characters.size());
  for (std::size_t psi = 0; psi < rc.characters.size(); ++psi) {
    std::array<cd, detail::kSlots> s{};
    for (int c = 0; c < rc.order(); ++c) {
      cd chi = rc.root(rc.characters[psi][c]);
      for (int k = 0; k < detail::kSlots; ++k) s[k] += chi * by_class[c][k];
    }
    auto& v = out[psi];
    v.Z = Z;
    v.u = u;
    v.r = r;
    v.psi = psi;
    v.sigma0 = s[detail::kS0];
    v.sigma1 = s[detail::kS1];
    v.sigma2p = s[detail::kS2p];
    v.sigma2pp = s[detail::kS2pp];
    v.sigma3 = s[detail::kS3];
    v.sigma4 = s[detail::kS4];
    v.sigma4_as_printed = s[detail::kS4Printed];
    v.terms = terms;
  }
  return out;
}

inline vaughan_decomposition vaughan_decompose(double Z, const gint& r, double u, std::size_t psi,
                                               unsigned threads = 1) {
  auto all = vaughan_decompose_all(Z, r, u, threads);
  require(psi < all.size(), "vaughan: character index out of range");
  return all[psi];
}

// ---------------------------------------------------------------- h relations

/// Character on primary elements.
using element_character = std::function<cd(const gint&)>;

/// sum_{n primary, N(n) > Y} |g(r, n)| N(n)^-sigma <= sqrt(N r) * this, using |g(r,n)| <= sqrt(N(r) N(n))
/// and #{n primary : N(n) <= x} <= (pi/8)(x + 4 sqrt(2 x) + 8).
inline double h_tail_bound(double norm_r, double sigma, double Y) {
  const double sp = sigma - 0.5;
  require(sp > 1.0, "h tail bound: requires Re(s) > 3/2");
  return std::sqrt(norm_r) * std::numbers::pi / 8.0 * sp *
         (std::pow(Y, 1.0 - sp) / (sp - 1.0) + 4.0 * std::numbers::sqrt2 * std::pow(Y, 0.5 - sp) / (sp - 0.5) +
          8.0 * std::pow(Y, -sp) / sp);
}

/// Truncated h(r, s, chi; alpha) = sum_{n primary, (n, alpha) = 1, N(n) <= Y} chi(n) g(r, n) N(n)^-s.
class h_series {
 public:
  h_series(std::uint64_t norm_cap, unsigned threads = 1)
      : cap_(norm_cap), threads_(threads), elements_(enumerate_primary_elements(norm_cap)) {}

  std::uint64_t cap() const { return cap_; }

  cd eval(const gint& r, cd s, const element_character& chi, const gint& alpha) {
    const auto& g = gauss_values(r);
    std::vector<cd> term(elements_.size());
    parallel_for(elements_.size(), threads_, [&](std::size_t i) {
      const gint& n = elements_[i];
      if (g[i] == cd(0) || !coprime(n, alpha)) return;
      term[i] = chi(n) * g[i] * std::exp(-s * std::log(static_cast<double>(n.norm())));
    });
    cd acc = 0;
    for (const auto& t : term) acc += t;
    return acc;
  }

  double tail(const gint& r, double sigma) const {
    return h_tail_bound(static_cast<double>(r.norm()), sigma, static_cast<double>(cap_));
  }

 private:
  const std::vector<cd>& gauss_values(const gint& r) {
    auto it = memo_.find(r);
    if (it != memo_.end()) return it->second;
    std::vector<cd> g(elements_.size());
    parallel_for(elements_.size(), threads_, [&](std::size_t i) { g[i] = gauss_k4(r, elements_[i]); });
    return memo_.emplace(r, std::move(g)).first->second;
  }

  std::uint64_t cap_;
  unsigned threads_;
  std::vector<gint> elements_;
  std::map<gint, std::vector<cd>> memo_;
};

/// Primary prime divisors of a squarefree primary element, canonical order.
inline std::vector<gint> prime_divisors(const gint& a) {
  std::vector<gint> out;
  if (a.is_unit()) return out;
  for (const auto& [p, e] : factor(a).factors) out.push_back(p);
  return out;
}

/// P(a) = prod_i conj(((a / prod_{l <= i} w_l)^2 / w_i^3)_4) for the given order of the prime divisors.
inline cd p_factor(const gint& a, const std::vector<gint>& order) {
  symbol_value acc = symbol_value::power(0);
  gint rest = a;
  for (const gint& w : order) {
    rest = exact_div(rest, w);
    acc = acc * quartic_symbol(rest * rest, gpow(w, 3)).conj();
  }
  return acc.to_complex();
}

struct relation_check {
  std::string name;
  cd lhs;
  cd rhs;
  double discrepancy = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct h_relations_report {
  gint r1, r2, r3;
  std::size_t psi = 0;
  cd s;
  std::uint64_t norm_cap = 0;
  std::vector<relation_check> relations;
  bool pass() const {
    return std::all_of(relations.begin(), relations.end(), [](const auto& c) { return c.pass; });
  }
};

/// Both sides of the three relations between h(r1 r2^2 r3^3, s, psi; alpha) for
/// alpha in {r1 r2 r3, r1 r2, r1, 1}, each truncated at N(n) <= cap.
inline h_relations_report h_relations_check(const gint& r1, const gint& r2, const gint& r3, std::size_t psi, cd s,
                                            h_series& series) {
  for (const gint* x : {&r1, &r2, &r3})
    require(x->is_odd() && is_primary(*x) && is_squarefree(*x), "h relations: r1, r2, r3 must be squarefree primary");
  require(coprime(r1, r2) && coprime(r1, r3) && coprime(r2, r3), "h relations: r1, r2, r3 must be pairwise coprime");
  require(s.real() >= 1.6, "h relations: requires Re(s) >= 1.6");
  const auto& rc = ray_class_16();
  require(psi < rc.characters.size(), "h relations: character index out of range");
  const double sigma = s.real();
  const gint r = r1 * r2 * r2 * gpow(r3, 3);
  element_character chi = [&rc, psi](const gint& n) { return rc.char_eval(psi, n); };
  auto nsp = [&](const gint& w, cd e) { return std::exp(e * std::log(static_cast<double>(w.norm()))); };

  h_relations_report rep{r1, r2, r3, psi, s, series.cap(), {}};
  auto finish = [&](std::string name, cd lhs, cd rhs, double bound) {
    relation_check c{std::move(name), lhs, rhs, std::abs(lhs - rhs), bound, false};
    c.pass = c.discrepancy <= c.bound;
    rep.relations.push_back(c);
  };

  const double tail_r = series.tail(r, sigma);
  const cd h123 = series.eval(r, s, chi, r1 * r2 * r3);
  const cd h12 = series.eval(r, s, chi, r1 * r2);
  const cd h1 = series.eval(r, s, chi, r1);
  const cd h0 = series.eval(r, s, chi, gint{1, 0});

  {
    cd prod = 1;
    for (const gint& w : prime_divisors(r3)) prod /= 1.0 - std::pow(chi(w), 4) * nsp(w, 3.0 - 4.0 * s);
    finish("r3 Euler factor", h123, prod * h12, tail_r * (1.0 + std::abs(prod)));
  }
  {
    cd prod = 1;
    for (const gint& w : prime_divisors(r2)) {
      const double rho_ww = c_parity(gpow(w, 3), w) ? -1.0 : 1.0;
      const cd minus_one = quartic_symbol(gint{-1, 0}, gpow(w, 3)).conj().to_complex();
      prod /= 1.0 - rho_ww * std::pow(chi(w), 4) * nsp(w, 2.0 - 4.0 * s) * static_cast<double>(w.norm()) * minus_one;
    }
    // h*: sum over a | r2
    cd hstar = 0;
    double hstar_tail = 0;
    const auto ps = prime_divisors(r2);
    for (std::uint32_t mask = 0; mask < (1U << ps.size()); ++mask) {
      gint a{1, 0};
      std::vector<gint> order;
      for (std::size_t j = 0; j < ps.size(); ++j)
        if (mask & (1U << j)) {
          a *= ps[j];
          order.push_back(ps[j]);
        }
      const double mu = (order.size() % 2) ? -1.0 : 1.0;
      const gint r2a = exact_div(r2, a);
      cd coef = mu * nsp(a, 2.0 - 3.0 * s) * p_factor(a, order);
      if (!a.is_unit()) {
        coef *= std::pow(chi(a), 3);
        const gint num = gint{-1, 0} * r1 * r2a * r2a * gpow(r3, 3);
        coef *= quartic_symbol(num, gpow(a, 3)).conj().to_complex();
        for (const gint& w : order) coef *= std::conj(to_cd(prime_character_gauss(w, 1)));
      }
      const gint ra = r1 * r2a * r2a * gpow(r3, 3);
      const gint a3 = gpow(a, 3);
      element_character twisted = [&rc, psi, a3](const gint& n) {
        return (c_parity(a3, n) ? -1.0 : 1.0) * rc.char_eval(psi, n);
      };
      hstar += coef * series.eval(ra, s, twisted, r1);
      hstar_tail += std::abs(coef) * series.tail(ra, sigma);
    }
    finish("r2 twisted sum", h12, prod * hstar, tail_r + std::abs(prod) * hstar_tail);
  }
  {
    cd prod = 1;
    for (const gint& w : prime_divisors(r1)) {
      const gint rest = exact_div(r, w);
      const cd sym = quartic_symbol(rest, gpow(w, 2)).conj().to_complex();
      prod /= 1.0 + std::pow(chi(w), 2) * nsp(w, 1.0 - 2.0 * s) * to_cd(prime_character_gauss(w, 2)) * sym;
    }
    finish("r1 quadratic factor", h1, prod * h0, tail_r * (1.0 + std::abs(prod)));
  }
  return rep;
}

// ---------------------------------------------------------------- fits

struct bound_fit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  double reference = 0.0;
  std::size_t points = 0;
  bool degenerate = false;
  /// slope < reference + 0.1
  bool within_reference = false;
};

/// Least-squares slope of log y against log grid; y is the running maximum of
/// |partial sum| unless use_running_max is false. Zero samples are dropped.
inline bound_fit exponent_fit(const series_sample& sample, double reference, bool use_running_max = true) {
  require(sample.grid.size() >= 6, "exponent_fit: at least 6 sample points required");
  require(sample.grid.size() == sample.values.size(), "exponent_fit: grid and values differ in length");
  for (std::size_t i = 1; i < sample.grid.size(); ++i)
    require(sample.grid[i] > sample.grid[i - 1], "exponent_fit: grid must be strictly increasing");
  bound_fit fit;
  fit.reference = reference;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sample.grid.size(); ++i) {
    double y = use_running_max && !sample.running_max.empty() ? sample.running_max[i] : std::abs(sample.values[i]);
    if (!(y > 0) || !std::isfinite(y)) continue;
    xs.push_back(std::log(sample.grid[i]));
    ys.push_back(std::log(y));
  }
  fit.points = xs.size();
  if (xs.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
  fit.within_reference = fit.slope < reference + 0.1;
  return fit;
}

/// Control series sum_{N(w) <= Z} log N(w) over primary primes.
inline series_sample prime_log_sample(const std::vector<double>& grid) {
  auto primes = enumerate_primary_primes(static_cast<std::uint64_t>(grid.back()));
  series_sample out;
  out.context = "sum log N(w)";
  out.grid = grid;
  double acc = 0;
  std::size_t k = 0;
  for (double z : grid) {
    while (k < primes.size() && static_cast<double>(primes[k].norm()) <= z)
      acc += std::log(static_cast<double>(primes[k++].norm()));
    out.values.push_back(acc);
    out.running_max.push_back(acc);
  }
  out.terms = k;
  return out;
}

}  // namespace qhecke
