#pragma once

// Complex log-gamma, digamma, upper incomplete gamma and Hurwitz zeta.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qhecke/error.hpp"

namespace qhecke::special {

template <class T>
using cx = std::complex<T>;

namespace detail {

// B_{2k} for k = 1..10
inline constexpr double kBernoulli[] = {1.0 / 6,         -1.0 / 30,    1.0 / 42,        -1.0 / 30,
                                        5.0 / 66,        -691.0 / 2730, 7.0 / 6,         -3617.0 / 510,
                                        43867.0 / 798,   -174611.0 / 330};

}  // namespace detail

/// A logarithm of Gamma(z); exp(lgamma(z)) = Gamma(z). The continuous branch
/// (real on the positive axis) for Re z >= 1/2; untracked below.
template <class T>
cx<T> lgamma(cx<T> z) {
  const T pi = std::numbers::pi_v<T>;
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma(cx<T>(1) - z);
  }
  cx<T> shift_log{0, 0};
  while (z.real() < 15 || std::abs(z) < 15) {
    shift_log += std::log(z);
    z += T(1);
  }
  cx<T> inv = T(1) / z, inv2 = inv * inv;
  cx<T> series{0, 0};
  cx<T> p = inv;
  for (int k = 1; k <= 8; ++k) {
    series += T(detail::kBernoulli[k - 1]) / T(2 * k * (2 * k - 1)) * p;
    p *= inv2;
  }
  return (z - T(0.5)) * std::log(z) - z + T(0.5) * std::log(2 * pi) + series - shift_log;
}

template <class T>
cx<T> gamma(cx<T> z) {
  return std::exp(lgamma(z));
}

template <class T>
cx<T> digamma(cx<T> z) {
  const T pi = std::numbers::pi_v<T>;
  if (z.real() < 0.5) {
    // psi(1-z) - psi(z) = pi cot(pi z)
    return digamma(cx<T>(1) - z) - pi / std::tan(pi * z);
  }
  cx<T> acc{0, 0};
  while (std::abs(z) < 15) {
    acc -= T(1) / z;
    z += T(1);
  }
  cx<T> inv = T(1) / z, inv2 = inv * inv;
  cx<T> series{0, 0};
  cx<T> p = inv2;
  for (int k = 1; k <= 8; ++k) {
    series += T(detail::kBernoulli[k - 1]) / T(2 * k) * p;
    p *= inv2;
  }
  return acc + std::log(z) - T(0.5) * inv - series;
}

namespace detail {

/// gamma(a, z) = z^a e^-z sum z^n / (a (a+1) ... (a+n)).
template <class T>
cx<T> lower_series(cx<T> a, cx<T> z) {
  cx<T> term = T(1) / a;
  cx<T> sum = term;
  for (int n = 1; n < 5000; ++n) {
    term *= z / (a + T(n));
    sum += term;
    if (std::abs(term) < std::numeric_limits<T>::epsilon() * std::abs(sum) * T(0.5)) {
      return std::exp(a * std::log(z) - z) * sum;
    }
  }
  throw convergence_error("incomplete gamma: lower series did not converge");
}

/// Gamma(a, z) = z^a e^-z / (z + 1 - a - 1(1-a)/(z + 3 - a - 2(2-a)/(...))), modified Lentz.
template <class T>
cx<T> upper_fraction(cx<T> a, cx<T> z, bool& ok) {
  const T tiny = std::numeric_limits<T>::min() * T(1e10);
  const T eps = std::numeric_limits<T>::epsilon();
  cx<T> b = z + T(1) - a;
  cx<T> c = T(1) / tiny;
  cx<T> d = T(1) / b;
  cx<T> h = d;
  for (int i = 1; i < 3000; ++i) {
    cx<T> an = -T(i) * (T(i) - a);
    b += T(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = T(1) / d;
    cx<T> delta = d * c;
    h *= delta;
    if (std::abs(delta - T(1)) < eps * T(2)) {
      ok = true;
      return std::exp(a * std::log(z) - z) * h;
    }
  }
  ok = false;
  return {0, 0};
}

}  // namespace detail

/// Upper incomplete gamma Gamma(a, z) for |arg z| < pi, principal branch of z^a.
template <class T>
cx<T> upper_gamma(cx<T> a, cx<T> z) {
  if (z == cx<T>(0)) {
    require(a.real() > 0, "upper_gamma: Gamma(a, 0) requires Re(a) > 0");
    return gamma(a);
  }
  // real fast path
  if (a.imag() == 0 && z.imag() == 0 && z.real() > 0 && a.real() > 0) {
    if (a.real() == T(0.5)) {
      T x = z.real();
      return cx<T>(std::sqrt(std::numbers::pi_v<T>) * boost::math::erfc(std::sqrt(x)), 0);
    }
    return cx<T>(boost::math::tgamma(a.real(), z.real()), 0);
  }
  const T az = std::abs(z);
  if (az > T(1.5) && az > T(0.3) * std::abs(a)) {
    bool ok = false;
    cx<T> v = detail::upper_fraction(a, z, ok);
    if (ok) return v;
  }
  // Gamma(a, z) = Gamma(a) - gamma(a, z); for Re(a) <= 0 step up with
  // Gamma(a+1, z) = a Gamma(a, z) + z^a e^-z.
  if (a.real() > T(0.5) || std::abs(a.imag()) > T(0.5)) {
    return gamma(a) - detail::lower_series(a, z);
  }
  const T nearest = std::round(a.real());
  if (nearest <= 0 && std::abs(a - cx<T>(nearest)) < T(1e-12)) {
    // E1(z) = -gamma - log z - sum (-z)^k / (k k!), then step down to a = -m
    cx<T> term{1, 0};
    cx<T> sum{0, 0};
    for (int k = 1; k < 5000; ++k) {
      term *= -z / T(k);
      cx<T> add = term / T(k);
      sum += add;
      if (std::abs(add) < std::numeric_limits<T>::epsilon() * (std::abs(sum) + T(1))) break;
    }
    cx<T> v = -std::numbers::egamma_v<T> - std::log(z) - sum;
    for (int b = -1; b >= static_cast<int>(nearest); --b) v = (v - std::exp(T(b) * std::log(z) - z)) / T(b);
    return v;
  }
  cx<T> shifted = a;
  int steps = 0;
  while (shifted.real() <= T(0.5)) {
    shifted += T(1);
    ++steps;
  }
  cx<T> v = gamma(shifted) - detail::lower_series(shifted, z);
  for (int k = 0; k < steps; ++k) {
    cx<T> b = shifted - T(1);
    v = (v - std::exp(b * std::log(z) - z)) / b;
    shifted = b;
  }
  return v;
}

/// Hurwitz zeta zeta(s, a), complex s != 1, real a in (0, 1], Euler-Maclaurin.
template <class T>
cx<T> hurwitz_zeta(cx<T> s, T a) {
  require(std::abs(s - cx<T>(1)) > T(1e-12), "hurwitz_zeta: pole at s = 1");
  const int n_direct = 20 + static_cast<int>(std::abs(s));
  cx<T> sum{0, 0};
  for (int k = 0; k < n_direct; ++k) sum += std::exp(-s * std::log(T(k) + a));
  const T x = T(n_direct) + a;
  const cx<T> xs = std::exp(-s * std::log(x));
  sum += xs * x / (s - T(1)) + T(0.5) * xs;
  // sum_j B_{2j}/(2j)! s (s+1) ... (s+2j-2) x^(-s-2j+1)
  cx<T> rising = s;
  cx<T> xp = xs / x;
  T fact = 2;
  for (int j = 1; j <= 10; ++j) {
    sum += T(detail::kBernoulli[j - 1]) / fact * rising * xp;
    rising *= (s + T(2 * j - 1)) * (s + T(2 * j));
    xp /= x * x;
    fact *= T((2 * j + 1) * (2 * j + 2));
  }
  return sum;
}

template <class T>
cx<T> riemann_zeta(cx<T> s) {
  return hurwitz_zeta(s, T(1));
}

/// Dirichlet L-function of the character mod 4: 4^-s (zeta(s, 1/4) - zeta(s, 3/4)).
template <class T>
cx<T> dirichlet_beta(cx<T> s) {
  return std::exp(-s * std::log(T(4))) * (hurwitz_zeta(s, T(0.25)) - hurwitz_zeta(s, T(0.75)));
}

}  // namespace qhecke::special
