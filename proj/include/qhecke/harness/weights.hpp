#pragma once

// Smooth weights w on (t0, t1) with Mellin transforms, and even test functions h
// with Fourier transform supported in [-a, a].

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qhecke/error.hpp"

namespace qhecke {

class weight_function {
 public:
  weight_function(std::string name, std::function<double(double)> w, double t0, double t1)
      : name_(std::move(name)), w_(std::move(w)), t0_(t0), t1_(t1) {
    require(0 < t0 && t0 < t1, "weight: support must satisfy 0 < t0 < t1");
  }

  /// exp(1 - 1/(1 - x^2)) with x the affine image of t in (-1, 1).
  static weight_function bump(double t0 = 1.0, double t1 = 2.0, double scale = 1.0) {
    require(scale > 0, "weight: scale must be positive");
    auto f = [t0, t1, scale](double t) {
      if (t <= t0 || t >= t1) return 0.0;
      double x = (2 * t - t0 - t1) / (t1 - t0);
      return scale * std::exp(1.0 - 1.0 / (1.0 - x * x));
    };
    return weight_function(scale == 1.0 ? "bump" : "bump*" + std::to_string(scale), f, t0, t1);
  }

  static weight_function by_name(const std::string& name, double t0 = 1.0, double t1 = 2.0) {
    if (name == "bump") return bump(t0, t1);
    throw domain_error("weight: unknown weight '" + name + "'");
  }

  const std::string& name() const { return name_; }
  double support_lo() const { return t0_; }
  double support_hi() const { return t1_; }
  double operator()(double t) const { return w_(t); }

  /// int_0^inf w(t) t^(s-1) dt.
  std::complex<double> mellin(std::complex<double> s) const {
    double re = integrate([&](double t) { return w_(t) * std::pow(t, s.real() - 1) * std::cos(s.imag() * std::log(t)); });
    double im = s.imag() == 0 ? 0.0
                              : integrate([&](double t) {
                                  return w_(t) * std::pow(t, s.real() - 1) * std::sin(s.imag() * std::log(t));
                                });
    return {re, im};
  }

  /// int_0^inf w(u) log u du.
  double log_moment() const {
    return integrate([&](double t) { return w_(t) * std::log(t); });
  }

 private:
  double integrate(const std::function<double(double)>& f) const {
    boost::math::quadrature::tanh_sinh<double> q;
    double err = 0;
    double v = q.integrate(f, t0_, t1_, 1e-13, &err);
    if (!(err <= 1e-10 * std::max(1.0, std::abs(v))))
      throw convergence_error("weight: quadrature error " + std::to_string(err) + " above 1e-10");
    return v;
  }

  std::string name_;
  std::function<double(double)> w_;
  double t0_, t1_;
};

/// h(x) = (sin(pi a x)/(pi a x))^2, with h^(xi) = int h(x) e(-x xi) dx = (1/a) max(0, 1 - |xi|/a).
class density_test_function {
 public:
  explicit density_test_function(double a = 0.8) : a_(a) { require(a > 0, "test function: a must be positive"); }

  double support() const { return a_; }
  double operator()(double x) const {
    double y = std::numbers::pi * a_ * x;
    if (std::abs(y) < 1e-8) return 1.0 - y * y / 3.0;
    double s = std::sin(y) / y;
    return s * s;
  }
  double fourier(double xi) const { return std::max(0.0, 1.0 - std::abs(xi) / a_) / a_; }
  /// int h over R.
  double integral() const { return 1.0 / a_; }

  /// int_R h(u) f(u) du for smooth bounded f, with the 1/u^2 tails beyond |u| = cut handled by
  /// averaging h to 1/(2 (pi a u)^2). When f is almost periodic with known mean, the tails use
  /// that mean instead of evaluating f at large |u|.
  double integrate_against(const std::function<double(double)>& f, double cut = 200.0,
                           std::optional<double> tail_mean = std::nullopt) const {
    boost::math::quadrature::tanh_sinh<double> q;
    double acc = 0;
    // one lobe of h per panel
    const double step = 1.0 / a_;
    for (double x = -cut; x < cut - 1e-12; x += step) {
      acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [&](double u) { return (*this)(u) * f(u); }, x, std::min(x + step, cut), 3, 1e-12);
    }
    const double c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * a_ * a_);
    if (tail_mean) return acc + 2.0 * c * *tail_mean / cut;
    acc += q.integrate([&](double u) { return c * f(u) / (u * u); }, cut, std::numeric_limits<double>::infinity());
    acc += q.integrate([&](double u) { return c * f(-u) / (u * u); }, cut, std::numeric_limits<double>::infinity());
    return acc;
  }

 private:
  double a_;
};

}  // namespace qhecke
