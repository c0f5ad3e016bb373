#pragma once

#include <cstdint>

#include "sl2lab/errors.hpp"

namespace sl2lab {

inline uint32_t add_mod(uint32_t a, uint32_t b, uint32_t m) {
  uint64_t s = uint64_t(a) + b;
  return uint32_t(s >= m ? s - m : s);
}

inline uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t m) {
  return a >= b ? a - b : a + m - b;
}

inline uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t m) {
  return uint32_t((uint64_t(a) * b) % m);
}

inline uint32_t pow_mod(uint32_t a, uint64_t e, uint32_t m) {
  uint32_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a unit modulo m via extended Euclid.  Throws DomainError if
// gcd(a, m) != 1.
inline uint32_t inv_mod(uint32_t a, uint32_t m) {
  int64_t t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DomainError("inv_mod: argument is not a unit");
  if (t < 0) t += m;
  return uint32_t(t);
}

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// p-adic valuation of n (n != 0).
inline uint32_t valuation(uint64_t n, uint32_t p) {
  uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace sl2lab
