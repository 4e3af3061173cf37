#pragma once

// Smoothed family sums over primes (LHS) set against the closed-form main
// terms (RHS).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qhecke/harness/main_terms.hpp"
#include "qhecke/lfun/zeros.hpp"
#include "qhecke/parallel.hpp"
#include "qhecke/zi/primes.hpp"

namespace qhecke {

enum class moment_variant { first, ratio, negative, logderiv };

inline std::string to_string(moment_variant v) {
  switch (v) {
    case moment_variant::first: return "first";
    case moment_variant::ratio: return "ratio";
    case moment_variant::negative: return "negative";
    default: return "logderiv";
  }
}

inline moment_variant parse_moment_variant(const std::string& s) {
  if (s == "first") return moment_variant::first;
  if (s == "ratio") return moment_variant::ratio;
  if (s == "negative") return moment_variant::negative;
  if (s == "logderiv") return moment_variant::logderiv;
  throw domain_error("unknown moment variant '" + s + "'");
}

inline theorem_id theorem_for(moment_variant v, bool rational) {
  switch (v) {
    case moment_variant::ratio: return rational ? theorem_id::ratio_q : theorem_id::ratio;
    case moment_variant::first: return rational ? theorem_id::first_q : theorem_id::first;
    case moment_variant::negative: return rational ? theorem_id::negative_q : theorem_id::negative;
    default: return rational ? theorem_id::logderiv_q : theorem_id::logderiv;
  }
}

struct experiment_options {
  unsigned threads = 1;
  eval_options eval;
  /// Step for the finite-difference log-derivative.
  double logderiv_step = 1e-4;
};

struct experiment_report {
  std::string theorem;
  std::string variant;
  double scale = 0.0;  // X or Q
  cd lhs{0, 0};
  cd rhs{0, 0};
  cd ratio{0, 0};
  /// Sum over the family of Lambda w |L-value error estimate|.
  double lhs_error = 0.0;
  std::size_t primes = 0;
  std::size_t terms = 0;
  double runtime_seconds = 0.0;
  std::string order_tag = "canonical-norm-order";
  std::vector<std::string> warnings;
  /// Density runs: general-form RHS, zero-tail corrected LHS, F(X).
  std::optional<double> rhs_general;
  std::optional<double> lhs_tail_corrected;
  std::optional<double> family_size;
  std::size_t zeros = 0;
  std::size_t zeros_certified = 0;
};

namespace detail {

using clock = std::chrono::steady_clock;

inline double seconds_since(clock::time_point t0) {
  return std::chrono::duration<double>(clock::now() - t0).count();
}

/// Family members with w(N/scale) != 0.
inline std::vector<gint> family_in_window(double scale, const weight_function& w) {
  auto all = enumerate_primary_primes(static_cast<std::uint64_t>(std::floor(scale * w.support_hi())), gint{1, 0});
  std::vector<gint> out;
  for (const auto& p : all) {
    double t = static_cast<double>(p.norm()) / scale;
    if (t > w.support_lo() && t < w.support_hi()) out.push_back(p);
  }
  return out;
}

/// The rational sums run over w, so each p is counted once for w and once for conj(w).
inline constexpr double kRationalMultiplicity = 2.0;

/// One canonical prime over each split p in the window (the first of the conjugate pair).
inline std::vector<gint> rational_family(double scale, const weight_function& w) {
  std::vector<gint> out;
  for (const auto& p : family_in_window(scale, w)) {
    if (p.im == 0) continue;
    if (!out.empty() && out.back().norm() == p.norm()) continue;
    out.push_back(p);
  }
  return out;
}

struct prime_term {
  cd value{0, 0};
  double error = 0.0;
  std::size_t terms = 0;
};

inline prime_term moment_factor(afe_lfunction& L, moment_variant v, const shift_params& p,
                                const experiment_options& opts) {
  prime_term out;
  auto at = [&](cd s) {
    l_value r = L.eval(s, opts.eval);
    out.terms += r.terms;
    return r;
  };
  switch (v) {
    case moment_variant::first: {
      auto a = at(0.5 + p.alpha);
      out.value = a.value;
      out.error = a.error_estimate;
      break;
    }
    case moment_variant::ratio: {
      auto a = at(0.5 + p.alpha);
      auto b = at(0.5 + p.beta);
      require(std::abs(b.value) > 0, "moment: L(1/2+beta) vanishes");
      out.value = a.value / b.value;
      out.error = std::abs(out.value) * (a.error_estimate / std::max(std::abs(a.value), 1e-300) +
                                         b.error_estimate / std::abs(b.value));
      break;
    }
    case moment_variant::negative: {
      auto b = at(0.5 + p.beta);
      require(std::abs(b.value) > 0, "moment: L(1/2+beta) vanishes");
      out.value = 1.0 / b.value;
      out.error = b.error_estimate / std::norm(b.value);
      break;
    }
    case moment_variant::logderiv: {
      out.value = L.log_derivative(0.5 + p.r, opts.eval, opts.logderiv_step);
      out.error = opts.eval.tolerance * std::abs(out.value);
      break;
    }
  }
  return out;
}

inline void finish(experiment_report& rep) {
  if (std::abs(rep.rhs) > 0) rep.ratio = rep.lhs / rep.rhs;
}

}  // namespace detail

/// Sum over primary primes w = 1 mod 16 of log N(w) F(L(., chi_w)) w(N(w)/X).
inline experiment_report moment_experiment(double X, moment_variant v, const shift_params& p,
                                           const weight_function& w, const experiment_options& opts = {}) {
  require(X >= 1024, "moment: X must be at least 2^10");
  const theorem_id th = theorem_for(v, false);
  validate_shifts(th, p);
  auto t0 = detail::clock::now();
  experiment_report rep;
  rep.theorem = to_string(th);
  rep.variant = to_string(v);
  rep.scale = X;
  auto fam = detail::family_in_window(X, w);
  std::vector<detail::prime_term> parts(fam.size());
  parallel_for(fam.size(), opts.threads, [&](std::size_t i) {
    try {
      auto L = make_hecke_l(fam[i]);
      parts[i] = detail::moment_factor(L, v, p, opts);
    } catch (const convergence_error& e) {
      throw convergence_error("moment: L-value did not converge at w = " + to_string(fam[i]) + ": " + e.what());
    }
  });
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double n = static_cast<double>(fam[i].norm());
    const double weight = std::log(n) * w(n / X);
    rep.lhs += weight * parts[i].value;
    rep.lhs_error += weight * parts[i].error;
    rep.terms += parts[i].terms;
  }
  rep.primes = fam.size();
  rep.rhs = main_term(th, p, X, w);
  detail::finish(rep);
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

/// Same sums over rational p = N(w), each carrying both quartic characters mod p.
inline experiment_report rational_experiment(double Q, moment_variant v, const shift_params& p,
                                             const weight_function& w, const experiment_options& opts = {}) {
  require(Q >= 1024, "rational: Q must be at least 2^10");
  const theorem_id th = theorem_for(v, true);
  validate_shifts(th, p);
  auto t0 = detail::clock::now();
  experiment_report rep;
  rep.theorem = to_string(th);
  rep.variant = to_string(v);
  rep.scale = Q;
  auto fam = detail::rational_family(Q, w);
  std::vector<detail::prime_term> parts(fam.size());
  parallel_for(fam.size(), opts.threads, [&](std::size_t i) {
    try {
      for (bool conj : {false, true}) {
        auto L = make_quartic_dirichlet_l(fam[i], conj);
        auto t = detail::moment_factor(L, v, p, opts);
        parts[i].value += t.value;
        parts[i].error += t.error;
        parts[i].terms += t.terms;
      }
    } catch (const convergence_error& e) {
      throw convergence_error("rational: L-value did not converge at p = " + std::to_string(fam[i].norm()) + ": " +
                              e.what());
    }
  });
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double n = static_cast<double>(fam[i].norm());
    const double weight = detail::kRationalMultiplicity * std::log(n) * w(n / Q);
    rep.lhs += weight * parts[i].value;
    rep.lhs_error += weight * parts[i].error;
    rep.terms += parts[i].terms;
  }
  rep.primes = fam.size();
  rep.rhs = main_term(th, p, Q, w);
  detail::finish(rep);
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

struct density_options {
  /// Zero search height.
  double T = 40.0;
  zero_search_options zeros;
  unsigned threads = 1;
  /// Largest conductor norm for which zeros are computed.
  std::uint64_t norm_limit = 5000;
};

namespace detail {

struct zero_sum {
  double value = 0.0;
  double tail = 0.0;
  std::size_t count = 0;
  /// Brackets with a sign change of Z(t) re-checked at both endpoints.
  std::size_t certified = 0;
  bool warned = false;
};

/// Sum of h(gamma log X / 2 pi) over zeros with |gamma| <= T, and the expected
/// contribution of |gamma| > T from the smooth zero density theta'(t)/pi.
inline zero_sum sum_over_zeros(afe_lfunction& L, double T, double log_x, const density_test_function& h,
                               const zero_search_options& zopts) {
  zero_sum out;
  auto z = find_zeros(L, T, zopts);
  for (double g : z.ordinates) out.value += h(g * log_x / (2 * std::numbers::pi));
  out.count = z.ordinates.size();
  out.warned = z.missed_zero_warning;
  for (const auto& b : z.brackets) {
    if (b.width() == 0 || L.hardy_z(b.lo, zopts.eval) * L.hardy_z(b.hi, zopts.eval) <= 0) ++out.certified;
  }
  // theta'(t) = log Q + kappa Re psi(kappa (1/2 + i t))
  const double k = L.kappa(), lq = std::log(L.conductor_scale());
  auto density = [&](double t) {
    return (lq + k * special::digamma<double>(cd(0.5 * k, k * t)).real()) / std::numbers::pi;
  };
  boost::math::quadrature::tanh_sinh<double> q;
  double tail = q.integrate([&](double t) { return h(t * log_x / (2 * std::numbers::pi)) * density(t); }, T,
                            std::numeric_limits<double>::infinity());
  out.tail = 2 * tail;
  return out;
}

}  // namespace detail

/// D(X; h) = (1/F(X)) sum* log N(w) w(N(w)/X) sum_gamma h(gamma log X / 2 pi), against the
/// closed-form and general-form predictions.
inline experiment_report density_experiment(double X, const density_test_function& h, const weight_function& w,
                                            const density_options& opts = {}, bool rational = false) {
  require(h.support() < 1.0, "density: support parameter a must be below 1");
  require(X >= 1024, "density: X must be at least 2^10");
  require(X * w.support_hi() <= static_cast<double>(opts.norm_limit),
          "density: conductors up to " + std::to_string(X * w.support_hi()) + " exceed the configured norm limit");
  auto t0 = detail::clock::now();
  experiment_report rep;
  rep.theorem = to_string(rational ? theorem_id::density_q : theorem_id::density);
  rep.variant = "density";
  rep.scale = X;
  const double log_x = std::log(X);
  auto fam = rational ? detail::rational_family(X, w) : detail::family_in_window(X, w);
  require(!fam.empty(), "density: empty family");
  const int members = rational ? 2 : 1;
  std::vector<detail::zero_sum> parts(fam.size());
  parallel_for(fam.size(), opts.threads, [&](std::size_t i) {
    for (int m = 0; m < members; ++m) {
      auto L = rational ? make_quartic_dirichlet_l(fam[i], m == 1) : make_hecke_l(fam[i]);
      auto z = detail::sum_over_zeros(L, opts.T, log_x, h, opts.zeros);
      parts[i].value += z.value;
      parts[i].tail += z.tail;
      parts[i].count += z.count;
      parts[i].certified += z.certified;
      parts[i].warned = parts[i].warned || z.warned;
    }
  });
  density_family_sums sums;
  double lhs = 0, tail = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double n = static_cast<double>(fam[i].norm());
    const double weight = (rational ? detail::kRationalMultiplicity : 1.0) * std::log(n) * w(n / X);
    sums.F += members * weight;
    sums.F_log += members * weight * std::log(n);
    lhs += weight * parts[i].value;
    tail += weight * parts[i].tail;
    rep.zeros += parts[i].count;
    rep.zeros_certified += parts[i].certified;
    if (parts[i].warned) rep.warnings.push_back("zero count off the expected value at w = " + to_string(fam[i]));
  }
  rep.primes = fam.size();
  rep.lhs = lhs / sums.F;
  rep.lhs_tail_corrected = (lhs + tail) / sums.F;
  rep.family_size = sums.F;
  rep.rhs = density_main_term(rational, log_x, h, w);
  rep.rhs_general = density_general_term(rational, X, log_x, h, w, sums);
  detail::finish(rep);
  rep.runtime_seconds = detail::seconds_since(t0);
  return rep;
}

/// F(X) = sum* log N(w) w(N(w)/X).
inline double family_size(double X, const weight_function& w) {
  double F = 0;
  for (const auto& p : detail::family_in_window(X, w)) {
    const double n = static_cast<double>(p.norm());
    F += std::log(n) * w(n / X);
  }
  return F;
}

struct mds_value {
  cd value{0, 0};
  /// Heuristic: max |L(w)/L(z)| seen times the prime-sum tail beyond the cap.
  double tail_bound = 0.0;
  std::size_t primes = 0;
};

/// sum* over N(w) <= norm_cap of log N(w) L(w, chi)/(N(w)^s L(z, chi)).
inline mds_value mds_eval(cd s, cd w, cd z, std::uint64_t norm_cap, const experiment_options& opts = {}) {
  require(s.real() >= 1.1, "mds: Re(s) >= 1.1 required for a usable tail bound");
  require(w.real() >= 0.5 && z.real() > 0.5, "mds: Re(w) >= 1/2 and Re(z) > 1/2 required");
  require((s + w).real() > 1.5 && (s + z).real() > 1.5, "mds: Re(s+w), Re(s+z) > 3/2 required");
  require(norm_cap >= 17, "mds: norm cap too small");
  auto fam = enumerate_primary_primes(norm_cap, gint{1, 0});
  std::vector<cd> parts(fam.size());
  const bool same = w == z;
  parallel_for(fam.size(), opts.threads, [&](std::size_t i) {
    if (same) {
      parts[i] = 1.0;
      return;
    }
    auto L = make_hecke_l(fam[i]);
    parts[i] = L.eval(w, opts.eval).value / L.eval(z, opts.eval).value;
  });
  mds_value out;
  double biggest = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double n = static_cast<double>(fam[i].norm());
    out.value += std::log(n) * std::exp(-s * std::log(n)) * parts[i];
    biggest = std::max(biggest, std::abs(parts[i]));
  }
  out.primes = fam.size();
  // sum over N > cap of log N N^-sigma, one family member per 32 prime ideals, two per split prime
  const double sig = s.real(), y = static_cast<double>(norm_cap), d = sig - 1;
  out.tail_bound = biggest * (2.0 / 32.0) * std::pow(y, -d) * (std::log(y) / d + 1.0 / (d * d));
  return out;
}

}  // namespace qhecke
