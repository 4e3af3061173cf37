#pragma once

// "a+bi" strings for Gaussian integers and complex numbers.

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdlib>
#include <string>

#include "qhecke/error.hpp"
#include "qhecke/zi/gint.hpp"

namespace qhecke::cli {

namespace detail {

/// Splits "a+bi", "a", "bi", "i", "-i", "a-i" into real and imaginary strings.
inline void split_complex(std::string s, std::string& re, std::string& im) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  require(!t.empty(), "parse: empty number");
  if (t.back() != 'i' && t.back() != 'j') {
    re = t;
    im = "0";
    return;
  }
  t.pop_back();
  // the imaginary part starts at the last sign not following an exponent marker
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) {
    re = "0";
    im = t;
  } else {
    re = t.substr(0, cut);
    im = t.substr(cut);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
}

inline double to_double(const std::string& s) {
  const char* b = s.c_str();
  char* e = nullptr;
  double v = std::strtod(b, &e);
  require(e != b && *e == '\0', "parse: malformed number '" + s + "'");
  return v;
}

inline std::int64_t to_int(const std::string& s) {
  std::int64_t v = 0;
  const char* b = s.data();
  if (*b == '+') ++b;
  auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
  require(ec == std::errc{} && p == s.data() + s.size(), "parse: malformed integer '" + s + "'");
  return v;
}

}  // namespace detail

inline gint parse_gint(const std::string& s) {
  std::string re, im;
  detail::split_complex(s, re, im);
  return gint{detail::to_int(re), detail::to_int(im)};
}

inline std::complex<double> parse_complex(const std::string& s) {
  std::string re, im;
  detail::split_complex(s, re, im);
  return {detail::to_double(re), detail::to_double(im)};
}

}  // namespace qhecke::cli
