#pragma once

// The ray class group h_(16) of Q(i) and its characters.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <vector>

#include "qhecke/zi/gint.hpp"

namespace qhecke {

struct ray_class_group {
  /// Primary residues a + bi mod 16 with 0 <= a, b < 16.
  std::vector<gint> classes;
  std::vector<std::vector<int>> table;
  int identity = 0;
  int exponent = 1;
  std::vector<int> invariant_factors;
  /// characters[k][c] = e means psi_k(class c) = exp(2 pi i e / exponent).
  std::vector<std::vector<int>> characters;
  std::array<int, 256> lookup{};

  int order() const { return static_cast<int>(classes.size()); }

  /// Class of the primary associate of odd n.
  int class_of(const gint& n) const {
    require(!n.is_zero() && n.is_odd(), "ray class: argument must be odd");
    gint p = to_primary(n);
    auto a = mod_pos<std::int64_t>(p.re, 16), b = mod_pos<std::int64_t>(p.im, 16);
    return lookup[static_cast<std::size_t>(a * 16 + b)];
  }

  int element_order(int c) const {
    int k = 1;
    for (int x = c; x != identity; x = table[x][c]) ++k;
    return k;
  }

  std::complex<double> root(int e) const {
    double t = 2.0 * std::numbers::pi * static_cast<double>(e) / exponent;
    return {std::cos(t), std::sin(t)};
  }

  int char_exponent(std::size_t psi, const gint& n) const { return characters.at(psi)[class_of(n)]; }
  std::complex<double> char_eval(std::size_t psi, const gint& n) const { return root(char_exponent(psi, n)); }
};

namespace detail {

inline ray_class_group build_ray_class_group() {
  ray_class_group g;
  g.lookup.fill(-1);
  for (std::int64_t a = 0; a < 16; ++a) {
    for (std::int64_t b = 0; b < 16; ++b) {
      gint z{a, b};
      if (z.is_odd() && is_primary(z)) {
        g.lookup[static_cast<std::size_t>(a * 16 + b)] = static_cast<int>(g.classes.size());
        g.classes.push_back(z);
      }
    }
  }
  const int n = g.order();
  g.table.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      gint p = g.classes[x] * g.classes[y];
      g.table[x][y] = g.lookup[static_cast<std::size_t>(mod_pos<std::int64_t>(p.re, 16) * 16 +
                                                        mod_pos<std::int64_t>(p.im, 16))];
    }
  }
  g.identity = g.lookup[1 * 16 + 0];

  std::vector<int> orders(n);
  for (int x = 0; x < n; ++x) {
    orders[x] = g.element_order(x);
    g.exponent = std::max(g.exponent, orders[x]);
  }

  // 2-group: #{x : x^(2^k) = 1} = prod_i 2^min(k, e_i) determines the e_i.
  std::vector<int> count_dividing;
  for (int k = 0; (1 << k) <= g.exponent; ++k) {
    int c = 0;
    for (int x = 0; x < n; ++x) c += ((1 << k) % orders[x] == 0) ? 1 : 0;
    count_dividing.push_back(c);
  }
  // number of cyclic factors with e_i >= k is log2(count[k] / count[k-1])
  std::vector<int> at_least;
  for (std::size_t k = 1; k < count_dividing.size(); ++k) {
    int ratio = count_dividing[k] / count_dividing[k - 1];
    at_least.push_back(static_cast<int>(std::lround(std::log2(ratio))));
  }
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    int exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    for (int r = 0; r < exactly; ++r) g.invariant_factors.push_back(1 << (k + 1));
  }
  std::sort(g.invariant_factors.begin(), g.invariant_factors.end());

  // greedy generating set
  std::vector<int> gens;
  std::vector<bool> in_span(n, false);
  in_span[g.identity] = true;
  auto close_span = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x) {
        if (!in_span[x]) continue;
        for (int s : gens) {
          int y = g.table[x][s];
          if (!in_span[y]) {
            in_span[y] = true;
            grew = true;
          }
        }
      }
    }
  };
  for (int x = 0; x < n; ++x) {
    if (in_span[x]) continue;
    gens.push_back(x);
    close_span();
  }

  // every assignment gens -> Z/exponent, kept when it extends to a homomorphism
  const int m = g.exponent;
  std::vector<int> assign(gens.size(), 0);
  for (;;) {
    std::vector<int> value(n, -1);
    value[g.identity] = 0;
    std::queue<int> todo;
    todo.push(g.identity);
    bool ok = true;
    while (!todo.empty() && ok) {
      int x = todo.front();
      todo.pop();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int y = g.table[x][gens[k]];
        int v = (value[x] + assign[k]) % m;
        if (value[y] < 0) {
          value[y] = v;
          todo.push(y);
        } else if (value[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
          if (value[g.table[x][y]] != (value[x] + value[y]) % m) ok = false;
    }
    if (ok) g.characters.push_back(value);
    std::size_t k = 0;
    while (k < assign.size() && ++assign[k] == m) assign[k++] = 0;
    if (k == assign.size()) break;
  }
  std::sort(g.characters.begin(), g.characters.end());
  return g;
}

}  // namespace detail

/// Built on first use, immutable afterwards.
inline const ray_class_group& ray_class_16() {
  static const ray_class_group group = detail::build_ray_class_group();
  return group;
}

/// #(O_K/16)^x by direct enumeration of residues coprime to lambda.
inline int unit_group_mod16_order() {
  int c = 0;
  for (std::int64_t a = 0; a < 16; ++a)
    for (std::int64_t b = 0; b < 16; ++b) c += gint{a, b}.is_odd() ? 1 : 0;
  return c;
}

}  // namespace qhecke
