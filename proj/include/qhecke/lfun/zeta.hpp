#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qhecke/lfun/numdiff.hpp"
#include "qhecke/lfun/special.hpp"

namespace qhecke {

using cd = std::complex<double>;

enum class zeta_kind { dedekind, riemann };

/// zeta_K(s) = zeta(s) L(s, chi_{-4}) or zeta(s). With omit_two the Euler
/// factor at norm 2 is removed: the value is multiplied by (1 - 2^-s).
inline cd zeta_eval(zeta_kind kind, cd s, bool omit_two = false) {
  require(std::abs(s - cd(1)) > 1e-12, "zeta_eval: pole at s = 1");
  cd v = special::riemann_zeta<double>(s);
  if (kind == zeta_kind::dedekind) v *= special::dirichlet_beta<double>(s);
  if (omit_two) v *= 1.0 - std::exp(-s * std::log(2.0));
  return v;
}

inline derivative_result zeta_derivative(zeta_kind kind, cd s, bool omit_two = false) {
  return richardson_derivative([&](cd z) { return zeta_eval(kind, z, omit_two); }, s, 1e-2, 1e-10);
}

/// zeta'/zeta at s.
inline cd zeta_log_derivative(zeta_kind kind, cd s, bool omit_two = false) {
  return zeta_derivative(kind, s, omit_two).value / zeta_eval(kind, s, omit_two);
}

/// Direct ideal sum sum_{n <= terms} r(n) n^-s for real s > 1, with r(n) the
/// number of ideals of norm n, plus the tail estimate (pi/4) M^(1-s)/(s-1).
struct ideal_sum_result {
  double value = 0.0;
  double tail = 0.0;
};

inline ideal_sum_result dedekind_ideal_sum(double s, std::uint64_t terms) {
  require(s > 1.0, "dedekind_ideal_sum: requires s > 1");
  // r(n) = sum_{d | n} chi_{-4}(d)
  std::vector<std::int32_t> r(terms + 1, 0);
  for (std::uint64_t d = 1; d <= terms; d += 2) {
    int chi = (d % 4 == 1) ? 1 : -1;
    for (std::uint64_t m = d; m <= terms; m += d) r[m] += chi;
  }
  double acc = 0.0;
  for (std::uint64_t n = terms; n >= 1; --n) acc += r[n] * std::pow(static_cast<double>(n), -s);
  ideal_sum_result out;
  out.tail = std::numbers::pi / 4.0 * std::pow(static_cast<double>(terms) + 0.5, 1.0 - s) / (s - 1.0);
  out.value = acc + out.tail;
  return out;
}

}  // namespace qhecke
