#pragma once

// Gaussian integers Z[i] over a pluggable integer backend.
//
// `gint` (int64 components, __int128 intermediates) is the workhorse for the
// desk-scale experiments; `big_gint` (boost cpp_int) covers arbitrary size.
// Every algorithm in this library is written once against basic_gint<Int>.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "qhecke/error.hpp"

namespace qhecke {

using bigint = boost::multiprecision::cpp_int;

template <class Int>
struct int_traits {
  using wide = Int;
};
template <>
struct int_traits<std::int64_t> {
  using wide = __int128;
};

/// floor(x / d) for d > 0.
template <class W>
constexpr W floor_div(W x, W d) {
  W q = x / d;
  if ((x % d != 0) && (x < 0)) --q;
  return q;
}

template <class Int>
Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

/// Euclidean remainder in [0, d) for d > 0.
template <class W>
constexpr W mod_pos(W x, W d) {
  W r = x % d;
  return r < 0 ? r + d : r;
}

template <class Int>
struct basic_gint {
  Int re{};
  Int im{};

  constexpr basic_gint() = default;
  constexpr basic_gint(Int r) : re(std::move(r)), im(0) {}  // NOLINT: integers embed
  constexpr basic_gint(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

  template <class Other>
  static basic_gint from(const basic_gint<Other>& z) {
    return {static_cast<Int>(z.re), static_cast<Int>(z.im)};
  }

  Int norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const { return norm() == 1; }
  /// Coprime to lambda = 1+i, i.e. odd norm.
  bool is_odd() const { return ((re + im) % 2) != 0; }
  basic_gint conj() const { return {re, -im}; }

  basic_gint& operator+=(const basic_gint& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  basic_gint& operator-=(const basic_gint& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  basic_gint& operator*=(const basic_gint& o) {
    Int r = re * o.re - im * o.im;
    Int i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend basic_gint operator+(basic_gint a, const basic_gint& b) { return a += b; }
  friend basic_gint operator-(basic_gint a, const basic_gint& b) { return a -= b; }
  friend basic_gint operator*(basic_gint a, const basic_gint& b) { return a *= b; }
  friend basic_gint operator-(const basic_gint& a) { return {-a.re, -a.im}; }
  friend bool operator==(const basic_gint& a, const basic_gint& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const basic_gint& a, const basic_gint& b) { return !(a == b); }
  /// Lexicographic (re, im); only used for ordered containers.
  friend bool operator<(const basic_gint& a, const basic_gint& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  }

  friend std::ostream& operator<<(std::ostream& os, const basic_gint& z) {
    return os << to_string(z);
  }

  friend std::string to_string(const basic_gint& z) {
    std::string out;
    auto str = [](const Int& v) {
      if constexpr (std::is_same_v<Int, bigint>) {
        return v.str();
      } else {
        return std::to_string(v);
      }
    };
    if (z.im == 0) return str(z.re);
    if (z.re != 0) out = str(z.re);
    Int mag = z.im < 0 ? Int(-z.im) : z.im;
    if (z.im < 0) {
      out += "-";
    } else if (z.re != 0) {
      out += "+";
    }
    if (mag != 1) out += str(mag);
    out += "i";
    return out;
  }
};

using gint = basic_gint<std::int64_t>;
using big_gint = basic_gint<bigint>;

template <class Int>
inline const basic_gint<Int> kLambda{1, 1};

/// i^e for e in Z/4.
template <class Int>
basic_gint<Int> unit_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// Exponent e with z = i^e; z must be a unit.
template <class Int>
int unit_exponent(const basic_gint<Int>& z) {
  if (z.re == 1 && z.im == 0) return 0;
  if (z.re == 0 && z.im == 1) return 1;
  if (z.re == -1 && z.im == 0) return 2;
  if (z.re == 0 && z.im == -1) return 3;
  throw domain_error("unit_exponent: argument is not a unit");
}

template <class Int>
basic_gint<Int> gpow(basic_gint<Int> base, std::uint64_t e) {
  basic_gint<Int> acc{1, 0};
  while (e != 0) {
    if (e & 1U) acc *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return acc;
}

/// Euclidean division a = q b + r with N(r) <= N(b)/2.
///
/// Quotient coordinates are the nearest integers to Re/Im of a/b, ties
/// rounded toward -infinity, so the result is deterministic.
template <class Int>
std::pair<basic_gint<Int>, basic_gint<Int>> div_rem(const basic_gint<Int>& a,
                                                    const basic_gint<Int>& b) {
  using W = typename int_traits<Int>::wide;
  require(!b.is_zero(), "div_rem: divisor must be nonzero");
  const W n = W(b.re) * W(b.re) + W(b.im) * W(b.im);
  const W x = W(a.re) * W(b.re) + W(a.im) * W(b.im);  // Re(a * conj b)
  const W y = W(a.im) * W(b.re) - W(a.re) * W(b.im);  // Im(a * conj b)
  // nearest integer, ties toward -inf: ceil((2x - n) / 2n)
  auto round_half_down = [&](const W& v) {
    return W(-floor_div<W>(W(-(2 * v - n)), W(2 * n)));
  };
  basic_gint<Int> q{static_cast<Int>(round_half_down(x)), static_cast<Int>(round_half_down(y))};
  basic_gint<Int> r = a - q * b;
  return {q, r};
}

template <class Int>
basic_gint<Int> mod(const basic_gint<Int>& a, const basic_gint<Int>& b) {
  return div_rem(a, b).second;
}

/// Exact division; throws if b does not divide a.
template <class Int>
basic_gint<Int> exact_div(const basic_gint<Int>& a, const basic_gint<Int>& b) {
  auto [q, r] = div_rem(a, b);
  require(r.is_zero(), "exact_div: divisor does not divide dividend");
  return q;
}

template <class Int>
bool divides(const basic_gint<Int>& d, const basic_gint<Int>& a) {
  if (d.is_zero()) return a.is_zero();
  return div_rem(a, d).second.is_zero();
}

/// Primary test: a = 1 mod 4 and b = 0 mod 4, or a = 3 mod 4 and b = 2 mod 4.
template <class Int>
bool is_primary(const basic_gint<Int>& z) {
  const auto a = mod_pos<Int>(z.re, Int(4));
  const auto b = mod_pos<Int>(z.im, Int(4));
  return (a == 1 && b == 0) || (a == 3 && b == 2);
}

/// The unique unit u with u*z primary. z must be odd.
template <class Int>
std::pair<basic_gint<Int>, basic_gint<Int>> primary_associate(const basic_gint<Int>& z) {
  require(!z.is_zero() && z.is_odd(), "primary_associate: argument must be odd");
  for (int e = 0; e < 4; ++e) {
    basic_gint<Int> u = unit_power<Int>(e);
    basic_gint<Int> p = u * z;
    if (is_primary(p)) return {u, p};
  }
  throw domain_error("primary_associate: no primary associate (unreachable)");
}

template <class Int>
basic_gint<Int> to_primary(const basic_gint<Int>& z) {
  return primary_associate(z).second;
}

/// Splits z = i^unit_exp * lambda^lambda_exp * odd with odd primary.
template <class Int>
struct lambda_split {
  int unit_exp = 0;
  unsigned lambda_exp = 0;
  basic_gint<Int> odd;
};

template <class Int>
lambda_split<Int> split_lambda(basic_gint<Int> z) {
  require(!z.is_zero(), "split_lambda: argument must be nonzero");
  lambda_split<Int> out;
  // z / (1+i) = z (1-i) / 2
  while (!z.is_odd()) {
    Int r = (z.re + z.im) / 2;
    Int i = (z.im - z.re) / 2;
    z = {r, i};
    ++out.lambda_exp;
  }
  auto [u, p] = primary_associate(z);
  // p = u z  =>  z = conj(u) p
  out.unit_exp = unit_exponent(u.conj());
  out.odd = p;
  return out;
}

/// Greatest common divisor normalized as lambda^k * (primary odd part).
/// gcd(z, 0) is the normalized z; gcd(0, 0) is rejected.
template <class Int>
basic_gint<Int> gcd(basic_gint<Int> a, basic_gint<Int> b) {
  require(!(a.is_zero() && b.is_zero()), "gcd: both arguments zero");
  while (!b.is_zero()) {
    auto r = div_rem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  auto split = split_lambda(a);
  return gpow(kLambda<Int>, split.lambda_exp) * split.odd;
}

template <class Int>
bool coprime(const basic_gint<Int>& a, const basic_gint<Int>& b) {
  return gcd(a, b).is_unit();
}

/// Reduces z into the canonical residue box {x + yi : 0 <= x < N/g, 0 <= y < g}
/// modulo c, where g = gcd(Re c, Im c).
template <class Int>
struct residue_box {
  Int real_period;  // N(c)/g
  Int imag_period;  // g
};

template <class Int>
residue_box<Int> residue_system(const basic_gint<Int>& c) {
  require(!c.is_zero(), "residue_system: modulus must be nonzero");
  Int g = int_gcd<Int>(c.re, c.im);
  return {c.norm() / g, g};
}

/// Parses "a+bi", "3-2i", "-i", "7", "5i".
template <class Int = std::int64_t>
basic_gint<Int> parse_gint(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  require(!s.empty(), "parse_gint: empty string");
  auto to_int = [](const std::string& part) -> Int {
    if (part.empty() || part == "+") return Int(1);
    if (part == "-") return Int(-1);
    std::size_t pos = 0;
    if (part[0] == '+' || part[0] == '-') pos = 1;
    if (pos >= part.size()) throw domain_error("parse_gint: malformed integer");
    for (std::size_t k = pos; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') throw domain_error("parse_gint: malformed integer '" + part + "'");
    if constexpr (std::is_same_v<Int, bigint>) {
      return Int(part[0] == '+' ? part.substr(1) : part);
    } else {
      return static_cast<Int>(std::stoll(part));
    }
  };
  if (s.back() != 'i') return {to_int(s), Int(0)};
  s.pop_back();
  // split at the last sign that is not the leading character
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {Int(0), to_int(s)};
  return {to_int(s.substr(0, split)), to_int(s.substr(split))};
}

}  // namespace qhecke

template <class Int>
struct std::hash<qhecke::basic_gint<Int>> {
  std::size_t operator()(const qhecke::basic_gint<Int>& z) const noexcept {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      auto h = static_cast<std::uint64_t>(z.re) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::uint64_t>(z.im) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    } else {
      return std::hash<std::string>{}(to_string(z));
    }
  }
};
