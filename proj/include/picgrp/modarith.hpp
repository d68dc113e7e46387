#pragma once

#include <cstdint>
#include <numeric>

#include "picgrp/error.hpp"

namespace picgrp {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// p-adic valuation of a nonzero integer
inline int valuation(std::int64_t a, std::int64_t p) {
  int v = 0;
  if (a == 0) return 64;
  if (a < 0) a = -a;
  while (a % p == 0) a /= p, ++v;
  return v;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    std::int64_t t = g / a1;
    g -= t * a1;
    std::swap(g, a1);
    x -= t * x1;
    std::swap(x, x1);
  }
  if (g != 1) throw input_error("NotInvertible", "element is not a unit modulo " + std::to_string(m));
  return mod(x, m);
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace picgrp
