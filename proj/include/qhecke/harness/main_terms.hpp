#pragma once

// Closed-form main terms of the moment, ratio, log-derivative and one-level
// density asymptotics, over Q(i) and over Q.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qhecke/harness/weights.hpp"
#include "qhecke/lfun/zeta.hpp"
#include "qhecke/ray_class.hpp"

namespace qhecke {

enum class theorem_id { ratio, first, negative, logderiv, density, ratio_q, first_q, negative_q, logderiv_q, density_q };

inline std::string to_string(theorem_id t) {
  switch (t) {
    case theorem_id::ratio: return "ratio";
    case theorem_id::first: return "first-moment";
    case theorem_id::negative: return "negative-moment";
    case theorem_id::logderiv: return "log-derivative";
    case theorem_id::density: return "density";
    case theorem_id::ratio_q: return "ratio-q";
    case theorem_id::first_q: return "first-moment-q";
    case theorem_id::negative_q: return "negative-moment-q";
    case theorem_id::logderiv_q: return "log-derivative-q";
    default: return "density-q";
  }
}

inline bool is_rational(theorem_id t) {
  return t == theorem_id::ratio_q || t == theorem_id::first_q || t == theorem_id::negative_q ||
         t == theorem_id::logderiv_q || t == theorem_id::density_q;
}

struct shift_params {
  cd alpha{0, 0};
  cd beta{0, 0};
  cd r{0, 0};
};

/// max{1/2, 5/6 - a, 1 - b, 1 - 3a - 2b, 1 - 13a/15 - 2b/15, 12/13 - 11a/13} with a = Re alpha, b = Re beta.
inline double error_exponent(cd alpha, cd beta) {
  const double a = alpha.real(), b = beta.real();
  return std::max({0.5, 5.0 / 6 - a, 1 - b, 1 - 3 * a - 2 * b, 1 - 13 * a / 15 - 2 * b / 15, 12.0 / 13 - 11 * a / 13});
}

/// Limit of error_exponent as beta -> infinity.
inline double error_exponent(cd alpha) {
  const double a = alpha.real();
  return std::max({0.5, 5.0 / 6 - a, 12.0 / 13 - 11 * a / 13});
}

inline double delta_exponent(cd alpha) { return alpha.real() < 0 ? 2.0 / 11 : 0.0; }

/// Rejects shifts outside the stated domain, naming the violated constraint.
inline void validate_shifts(theorem_id t, const shift_params& p) {
  switch (t) {
    case theorem_id::ratio:
    case theorem_id::ratio_q:
      require(p.alpha.real() > -1.0 / 11, "shifts: Re(alpha) > -1/11 violated");
      require(p.beta.real() > 0, "shifts: Re(beta) > 0 violated");
      require(error_exponent(p.alpha, p.beta) < 1, "shifts: E(alpha, beta) < 1 violated");
      break;
    case theorem_id::first:
    case theorem_id::first_q:
      require(p.alpha.real() > -1.0 / 11, "shifts: Re(alpha) > -1/11 violated");
      break;
    case theorem_id::negative:
    case theorem_id::negative_q:
      require(p.beta.real() > 0, "shifts: Re(beta) > 0 violated");
      break;
    case theorem_id::logderiv:
    case theorem_id::logderiv_q:
      require(p.r.real() > 0 && p.r.real() < 0.5, "shifts: 0 < Re(r) < 1/2 violated");
      break;
    default: break;
  }
}

/// zeta^(j)_K or zeta^(j): the Euler factor at 2 removed.
inline cd zeta_j(bool rational, cd s) { return zeta_eval(rational ? zeta_kind::riemann : zeta_kind::dedekind, s, true); }

inline cd zeta_j_log_derivative(bool rational, cd s) {
  return zeta_log_derivative(rational ? zeta_kind::riemann : zeta_kind::dedekind, s, true);
}

inline cd pow2(cd e) { return std::exp(e * std::numbers::ln2); }

/// (1/#h) (1 - 2^-z)/(1 - 2^-w) zeta^(j)_K(4w)/zeta^(j)_K(3w + z).
inline cd residue_formula(cd w, cd z) {
  const double h = ray_class_16().order();
  return (1.0 - pow2(-z)) / (1.0 - pow2(-w)) * zeta_j(false, 4.0 * w) / zeta_j(false, 3.0 * w + z) / h;
}

/// Main term of the moment-type asymptotics (not the densities).
/// mellin1 is w^(1) (or Phi^(1)); scale is X (or Q).
inline cd main_term(theorem_id t, const shift_params& p, double scale, double mellin1) {
  validate_shifts(t, p);
  const bool q = is_rational(t);
  const double h = ray_class_16().order();
  const double lead = (q ? 2.0 : 1.0) * mellin1 * scale / h;
  const cd a = p.alpha, b = p.beta, r = p.r;
  switch (t) {
    case theorem_id::ratio:
    case theorem_id::ratio_q:
      return lead * (1.0 - pow2(-0.5 - b)) / (1.0 - pow2(-0.5 - a)) * zeta_j(q, 2.0 + 4.0 * a) /
             zeta_j(q, 2.0 + 3.0 * a + b);
    case theorem_id::first:
    case theorem_id::first_q: return lead * zeta_j(q, 2.0 + 4.0 * a) / (1.0 - pow2(-0.5 - a));
    case theorem_id::negative:
    case theorem_id::negative_q: return lead * (1.0 - pow2(-0.5 - b));
    case theorem_id::logderiv:
    case theorem_id::logderiv_q:
      return lead * (zeta_j_log_derivative(q, 2.0 + 4.0 * r) - std::numbers::ln2 / (pow2(0.5 + r) - 1.0));
    default: throw domain_error("main_term: density theorems use density_main_term");
  }
}

inline cd main_term(theorem_id t, const shift_params& p, double scale, const weight_function& w) {
  return main_term(t, p, scale, w.mellin(1.0).real());
}

/// Closed form of D(X; h) for a < 1, up to O(1/log^2 X).
inline double density_main_term(bool rational, double log_x, const density_test_function& h,
                                const weight_function& w) {
  require(h.support() < 1.0, "density: closed form needs a < 1");
  const double pi = std::numbers::pi;
  const double w1 = w.mellin(1.0).real();
  const double zeta_term = 2.0 * zeta_j_log_derivative(rational, 2.0).real();
  const double two_term = 2.0 * std::numbers::ln2 / (std::numbers::sqrt2 - 1.0);
  double bracket = zeta_term - two_term + w.log_moment() / w1;
  if (rational) {
    bracket += special::digamma<double>(cd(0.25)).real() + std::log(1.0 / pi);
  } else {
    bracket += 2.0 * special::digamma<double>(cd(0.5)).real() + std::log(4.0 / (4.0 * pi * pi));
  }
  // 2 h^(1) in the Mellin normalization is int_R h
  return h.integral() + h.integral() / log_x * bracket;
}

/// Inputs of the general (any a) density formula taken from the family itself.
struct density_family_sums {
  double F = 0.0;              // sum Lambda w(N/X)
  double F_log = 0.0;          // sum Lambda w(N/X) log N
};

/// The general density formula: prime-sum term, zeta term, gamma term and discriminant term.
inline double density_general_term(bool rational, double scale, double log_x, const density_test_function& h,
                                   const weight_function& w, const density_family_sums& fam) {
  const double pi = std::numbers::pi;
  const double hsize = ray_class_16().order();
  const double w1 = w.mellin(1.0).real();
  const double hint = h.integral();
  double out = hint * fam.F_log / (fam.F * log_x);
  auto zeta_part = [&](double u) {
    cd s = 2.0 + cd(0, 8.0 * pi * u / log_x);
    cd e = 0.5 + cd(0, 2.0 * pi * u / log_x);
    return (zeta_j_log_derivative(rational, s) - std::numbers::ln2 / (pow2(e) - 1.0)).real();
  };
  const double pref = (rational ? 4.0 : 2.0) * w1 / hsize * scale / log_x / fam.F;
  // both parts are Dirichlet series without constant term, so their mean over u is 0
  out += pref * h.integrate_against(zeta_part, 200.0, 0.0);
  if (rational) {
    auto gamma_part = [&](double u) {
      cd z(0.25, pi * u / log_x);
      return (special::digamma<double>(z) + special::digamma<double>(std::conj(z))).real();
    };
    out += h.integrate_against(gamma_part) / (2.0 * log_x);
    out += hint / log_x * std::log(1.0 / pi);
  } else {
    auto gamma_part = [&](double u) {
      cd z(0.5, 2.0 * pi * u / log_x);
      return (special::digamma<double>(z) + special::digamma<double>(std::conj(z))).real();
    };
    out += h.integrate_against(gamma_part) / log_x;
    out += hint / log_x * std::log(4.0 / (4.0 * pi * pi));
  }
  return out;
}

}  // namespace qhecke
