#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>

#include "qhecke/zi/gint.hpp"

namespace qhecke::proptest {

class gen {
 public:
  explicit gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  gint element(std::int64_t bound) {
    gint z;
    do z = {integer(-bound, bound), integer(-bound, bound)};
    while (z.is_zero());
    return z;
  }

  gint odd(std::int64_t bound) {
    gint z;
    do z = element(bound);
    while (!z.is_odd());
    return z;
  }

  gint primary(std::int64_t bound) {
    gint z;
    do z = to_primary(odd(bound));
    while (z.is_unit());
    return z;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qhecke::proptest
