#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qhecke/error.hpp"

namespace qhecke {

struct derivative_result {
  std::complex<double> value;
  double error_estimate = 0.0;
  double step = 0.0;
};

/// f'(s) by central differences with step halving and Richardson extrapolation.
/// The error estimate is the change between the last two extrapolated values.
template <class F>
derivative_result richardson_derivative(F&& f, std::complex<double> s, double h0 = 1e-2, double rel_tol = 1e-8,
                                        int max_levels = 8) {
  const int n = max_levels;
  std::vector<std::vector<std::complex<double>>> t(n, std::vector<std::complex<double>>(n));
  double h = h0;
  derivative_result best;
  best.error_estimate = INFINITY;
  for (int i = 0; i < n; ++i) {
    t[i][0] = (f(s + h) - f(s - h)) / (2.0 * h);
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      t[i][j] = (factor * t[i][j - 1] - t[i - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    if (i > 0) {
      double err = std::abs(t[i][i] - t[i - 1][i - 1]);
      if (err < best.error_estimate) {
        best = {t[i][i], err, h};
      }
      if (err <= rel_tol * std::max(std::abs(t[i][i]), 1e-300)) return best;
    }
    h *= 0.5;
  }
  if (best.error_estimate > 1e3 * rel_tol * std::max(std::abs(best.value), 1e-300))
    throw convergence_error("richardson_derivative: step halving did not settle (error " +
                            std::to_string(best.error_estimate) + ")");
  return best;
}

}  // namespace qhecke
