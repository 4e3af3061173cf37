#pragma once

// Critical-line zeros from sign changes of the real rotation Z(t).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qhecke/lfun/hecke.hpp"

namespace qhecke {

struct zero_bracket {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

struct zero_list {
  std::uint64_t conductor = 0;
  std::vector<double> ordinates;
  std::vector<zero_bracket> brackets;
  double search_height = 0.0;
  /// (theta(T) - theta(-T)) / pi.
  double expected_count = 0.0;
  bool missed_zero_warning = false;
  /// Largest |Im| of the rotated value seen on the grid.
  double max_imag_residual = 0.0;
};

struct zero_search_options {
  double grid_step = 0.1;
  double bracket_width = 1e-4;
  int refine_factor = 10;
  double count_slack = 2.0;
  eval_options eval;
};

/// Sign changes of Z(t) on [-T, T], refined by bisection to width <= bracket_width.
inline zero_list find_zeros(afe_lfunction& L, double T, const zero_search_options& opts = {}) {
  require(T > 0, "find_zeros: T must be positive");
  require(opts.grid_step > 0 && opts.bracket_width > 0, "find_zeros: grid and bracket width must be positive");
  zero_list out;
  out.search_height = T;
  auto z_at = [&](double t) {
    double im = 0;
    double v = L.hardy_z(t, opts.eval, &im);
    out.max_imag_residual = std::max(out.max_imag_residual, im);
    return v;
  };
  const auto steps = static_cast<std::size_t>(std::ceil(2 * T / opts.grid_step));
  std::vector<double> ts(steps + 1), zs(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    ts[k] = -T + 2 * T * static_cast<double>(k) / static_cast<double>(steps);
    zs[k] = z_at(ts[k]);
  }

  std::vector<zero_bracket> coarse;
  auto scan = [&](double a, double za, double b, double zb) {
    if (za == 0) {
      coarse.push_back({a, a});
    } else if ((za < 0) != (zb < 0) && zb != 0) {
      coarse.push_back({a, b});
    }
  };
  for (std::size_t k = 0; k < steps; ++k) {
    bool dip = false;
    // same sign at both ends but |Z| dips towards an end: look inside
    if ((zs[k] < 0) == (zs[k + 1] < 0)) {
      bool left_min = k > 0 && std::abs(zs[k]) < std::abs(zs[k - 1]) && std::abs(zs[k]) < std::abs(zs[k + 1]);
      bool right_min =
          k + 2 <= steps && std::abs(zs[k + 1]) < std::abs(zs[k]) && std::abs(zs[k + 1]) < std::abs(zs[k + 2]);
      dip = left_min || right_min;
    }
    if (!dip) {
      scan(ts[k], zs[k], ts[k + 1], zs[k + 1]);
      continue;
    }
    double prev_t = ts[k], prev_z = zs[k];
    for (int j = 1; j <= opts.refine_factor; ++j) {
      double t = ts[k] + (ts[k + 1] - ts[k]) * j / opts.refine_factor;
      double z = j == opts.refine_factor ? zs[k + 1] : z_at(t);
      scan(prev_t, prev_z, t, z);
      prev_t = t;
      prev_z = z;
    }
  }
  if (zs[steps] == 0) coarse.push_back({ts[steps], ts[steps]});

  for (auto br : coarse) {
    if (br.lo != br.hi) {
      double zlo = z_at(br.lo);
      while (br.width() > opts.bracket_width) {
        double m = br.mid();
        double zm = z_at(m);
        if (zm == 0) {
          br = {m, m};
          break;
        }
        if ((zm < 0) == (zlo < 0)) {
          br.lo = m;
          zlo = zm;
        } else {
          br.hi = m;
        }
      }
    }
    out.brackets.push_back(br);
    out.ordinates.push_back(br.mid());
  }
  out.expected_count = (L.theta(T) - L.theta(-T)) / std::numbers::pi;
  out.missed_zero_warning =
      std::abs(static_cast<double>(out.ordinates.size()) - out.expected_count) > opts.count_slack;
  return out;
}

/// Zeros of L(s, chi_w) with N(w) below the desk limit.
inline zero_list find_zeros(const gint& w, double T, const zero_search_options& opts = {},
                            std::uint64_t norm_limit = 5000, bool conjugate = false) {
  require(T <= 40.0, "find_zeros: T must be at most 40");
  require(static_cast<std::uint64_t>(w.norm()) <= norm_limit, "find_zeros: N(w) above the configured limit");
  auto L = make_hecke_l(w, conjugate);
  auto out = find_zeros(L, T, opts);
  out.conductor = static_cast<std::uint64_t>(w.norm());
  return out;
}

}  // namespace qhecke
