#pragma once

// Smoothed approximate functional equation for L-functions with one gamma factor.
//
//   Lambda(s) = Q^s Gamma(k s) L(s) = W conj-Lambda(1 - s)
//   Lambda(s) = sum a_n (Q/n)^s Gamma(k s, A c_n)
//             + W sum conj(a_n) (Q/n)^(1-s) Gamma(k (1-s), c_n / A),   c_n = (n/Q)^(1/k)
//
// for any complex A with |arg A| < pi/2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qhecke/error.hpp"
#include "qhecke/lfun/numdiff.hpp"
#include "qhecke/lfun/special.hpp"

namespace qhecke {

using cd = std::complex<double>;

enum class eval_method { afe, direct };

struct eval_options {
  /// Only double precision evaluation is implemented.
  int precision_bits = 53;
  eval_method method = eval_method::afe;
  /// Largest allowed disagreement between the two smoothing choices.
  double tolerance = 1e-6;
  /// Term budget; exceeding it raises convergence_error.
  std::size_t max_terms = 50'000'000;
  /// Second smoothing parameter is A2 = second_scale * A1.
  double second_scale = 1.15;
  /// exp(rotation_budget) bounds the cancellation allowed in the rotated sums.
  double rotation_budget = 10.0;
  /// Length of the plain series used by eval_method::direct.
  std::size_t direct_terms = 1'000'000;
};

struct l_value {
  cd value;
  double error_estimate = 0.0;
  std::size_t terms = 0;
};

/// Fills a[0..n] (a[0] unused) with Dirichlet coefficients.
using coefficient_source = std::function<void(std::size_t n, std::vector<cd>& a)>;

class afe_lfunction {
 public:
  afe_lfunction(coefficient_source source, double kappa, double q, cd root_number)
      : source_(std::move(source)), kappa_(kappa), q_(q), root_(root_number) {
    require(kappa > 0 && q > 0, "afe_lfunction: kappa and Q must be positive");
  }

  double kappa() const { return kappa_; }
  double conductor_scale() const { return q_; }
  cd root_number() const { return root_; }

  /// Coefficient a_n, growing the table as needed.
  cd coefficient(std::size_t n) {
    ensure(n);
    return coeffs_[n];
  }

  /// Rotation angle of A for height t.
  double angle(double t, const eval_options& opts) const {
    double phi = std::numbers::pi / 2 - opts.rotation_budget / (kappa_ * std::abs(t));
    if (!(phi > 0)) return 0.0;
    return t > 0 ? phi : -phi;
  }

  /// L(s) from a single smoothing parameter A.
  cd eval_with(cd s, cd A, std::size_t& terms, const eval_options& opts) {
    const double logq = std::log(q_);
    const cd s1 = kappa_ * s;
    const cd s2 = kappa_ * (1.0 - s);
    const cd lg1 = special::lgamma<double>(s1);
    const cd lg2 = special::lgamma<double>(s2);
    const double thr = 55.0 + std::max(0.0, std::abs(s1) > 1 ? std::log(std::abs(s1)) : 0.0);
    const double r1 = A.real();
    const double r2 = (1.0 / A).real();
    require(r1 > 0 && r2 > 0, "afe: |arg A| must be below pi/2");
    const std::size_t n1 = cutoff(thr / r1);
    const std::size_t n2 = cutoff(thr / r2);
    const std::size_t n = std::max(n1, n2);
    if (n > opts.max_terms)
      throw convergence_error("afe: term budget exceeded (" + std::to_string(n) + " > " +
                              std::to_string(opts.max_terms) + ")");
    ensure(n);
    terms += n1 + n2;
    cd first{0, 0};
    for (std::size_t k = n1; k >= 1; --k) {
      if (coeffs_[k] == cd(0)) continue;
      const double ck = scaled(k);
      cd g = special::upper_gamma<double>(s1, A * ck);
      if (g == cd(0)) continue;
      first += coeffs_[k] * std::exp(-s * std::log(static_cast<double>(k)) + std::log(g) - lg1);
    }
    cd second{0, 0};
    for (std::size_t k = n2; k >= 1; --k) {
      if (coeffs_[k] == cd(0)) continue;
      const double ck = scaled(k);
      cd g = special::upper_gamma<double>(s2, ck / A);
      if (g == cd(0)) continue;
      second += std::conj(coeffs_[k]) * std::exp((s - 1.0) * std::log(static_cast<double>(k)) + std::log(g) - lg2);
    }
    // W Q^(1-2s) Gamma(k(1-s)) / Gamma(k s)
    cd factor = root_ * std::exp((1.0 - 2.0 * s) * logq + lg2 - lg1);
    return first + factor * second;
  }

  /// L(s) via the smoothed functional equation, validated by a second smoothing parameter.
  l_value eval(cd s, const eval_options& opts = {}) {
    require(opts.precision_bits <= 53, "afe: precision above 53 bits is not supported");
    if (opts.method == eval_method::direct) return direct(s, opts);
    const double phi = angle(s.imag(), opts);
    const cd a1 = std::polar(1.0, phi);
    const cd a2 = opts.second_scale * a1;
    l_value out;
    cd v1 = eval_with(s, a1, out.terms, opts);
    cd v2 = eval_with(s, a2, out.terms, opts);
    out.value = v1;
    out.error_estimate = std::abs(v1 - v2);
    if (!(out.error_estimate <= opts.tolerance * std::max(1.0, std::abs(v1))))
      throw convergence_error("afe: smoothing choices disagree by " + std::to_string(out.error_estimate));
    return out;
  }

  /// Plain Dirichlet series sum_{n <= N} a_n n^-s for Re(s) > 1, N = opts.direct_terms.
  /// The error estimate is the divisor-bound tail sum_{n > N} d(n) n^-sigma.
  l_value direct(cd s, const eval_options& opts = {}) {
    require(s.real() > 1.0, "direct series requires Re(s) > 1");
    const double sigma = s.real();
    const std::size_t n = opts.direct_terms;
    ensure(n);
    l_value out;
    for (std::size_t k = n; k >= 1; --k) out.value += coeffs_[k] * std::exp(-s * std::log(static_cast<double>(k)));
    out.terms = n;
    const double x = static_cast<double>(n), d = sigma - 1.0;
    out.error_estimate = std::pow(x, -d) * (std::log(x) / d + 1.0 / (d * d) + 2.0 * std::numbers::egamma / d);
    return out;
  }

  /// L'(s)/L(s) by Richardson-extrapolated central differences of the AFE.
  cd log_derivative(cd s, const eval_options& opts = {}, double h0 = 1e-3) {
    auto f = [&](cd z) { return eval(z, opts).value; };
    auto d = richardson_derivative(f, s, h0, 1e-8);
    return d.value / f(s);
  }

  /// theta(t) = arg(Q^(1/2+it) Gamma(k(1/2+it))), taken continuous with theta(0) = 0.
  double theta(double t) const {
    const int m = 400;
    const double h = t / m;
    auto f = [&](double u) { return kappa_ * special::digamma<double>(cd(kappa_ * 0.5, kappa_ * u)).real(); };
    double acc = f(0) + f(t);
    for (int i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return t * std::log(q_) + acc * h / 3.0;
  }

  /// Real-valued rotation W^(-1/2) Lambda(1/2+it) / |Q^s Gamma(k s)|.
  double hardy_z(double t, const eval_options& opts = {}, double* imag_residual = nullptr) {
    cd s(0.5, t);
    l_value v = eval(s, opts);
    cd lg = special::lgamma<double>(kappa_ * s);
    cd phase = std::exp(cd(0, t * std::log(q_) + lg.imag()));
    cd z = v.value * phase / std::sqrt(root_);
    if (imag_residual) *imag_residual = std::abs(z.imag());
    return z.real();
  }

 private:
  double scaled(std::size_t n) const {
    double x = static_cast<double>(n) / q_;
    return kappa_ == 1.0 ? x : std::pow(x, 1.0 / kappa_);
  }
  /// Largest n with c_n < x.
  std::size_t cutoff(double x) const {
    double n = q_ * std::pow(x, kappa_);
    return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
  }
  void ensure(std::size_t n) {
    if (n < coeffs_.size()) return;
    std::size_t want = std::max<std::size_t>(n + 1, coeffs_.size() * 2);
    coeffs_.assign(want, cd(0));
    source_(want - 1, coeffs_);
  }

  coefficient_source source_;
  double kappa_;
  double q_;
  cd root_;
  std::vector<cd> coeffs_;
};

}  // namespace qhecke
