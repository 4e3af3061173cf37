#pragma once

#include <cmath>
#include <cstdint>

#include "qhecke/zi/factor.hpp"

namespace qhecke {

namespace detail {
template <class Int>
void require_primary(const basic_gint<Int>& n, const char* what) {
  require(!n.is_zero() && n.is_odd() && is_primary(n), what);
}
}  // namespace detail

/// Lambda_K(n) = log N(w) if n = w^k for a primary prime w, else 0.
template <class Int>
double mangoldt(const basic_gint<Int>& n) {
  detail::require_primary(n, "mangoldt: argument must be odd primary");
  if (n.is_unit()) return 0.0;
  auto f = factor(n);
  if (f.factors.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.factors.front().first.norm()));
}

template <class Int>
int moebius(const basic_gint<Int>& n) {
  detail::require_primary(n, "moebius: argument must be odd primary");
  if (n.is_unit()) return 1;
  auto f = factor(n);
  if (!f.squarefree_odd()) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

/// phi_K(n) = #(O_K/(n))^x.
template <class Int>
Int euler_phi(const basic_factorization<Int>& f) {
  Int acc = 1;
  if (f.lambda_exp > 0) {
    for (unsigned k = 1; k < f.lambda_exp; ++k) acc *= 2;
  }
  for (const auto& [p, e] : f.factors) {
    Int q = p.norm();
    acc *= q - 1;
    for (unsigned k = 1; k < e; ++k) acc *= q;
  }
  return acc;
}

template <class Int>
Int euler_phi(const basic_gint<Int>& n) {
  require(!n.is_zero(), "euler_phi: argument must be nonzero");
  return euler_phi(factor(n));
}

template <class Int>
bool is_squarefree(const basic_gint<Int>& n) {
  auto f = factor(n);
  return f.lambda_exp <= 1 && f.squarefree_odd();
}

}  // namespace qhecke
