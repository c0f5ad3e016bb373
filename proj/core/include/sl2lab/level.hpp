#pragma once

#include <cstdint>

#include "sl2lab/errors.hpp"
#include "sl2lab/modarith.hpp"

namespace sl2lab {

// Fixes the prime p and the truncation depth N.  Everything downstream
// lives in the finite quotient SL2(Z/p^N); subgroup levels k must satisfy
// 1 <= k <= N.
struct LevelContext {
  uint32_t p = 0;
  uint32_t N = 0;
  uint32_t modulus = 0;  // p^N

  LevelContext() = default;

  LevelContext(uint32_t p_, uint32_t N_) : p(p_), N(N_) {
    if (!is_prime_u32(p)) throw ParamError("LevelContext: p must be prime");
    if (N < 1) throw ParamError("LevelContext: N must be >= 1");
    uint64_t m = ipow(p, N);
    if (m > (uint64_t(1) << 31)) throw ResourceError("LevelContext: p^N exceeds 2^31");
    modulus = uint32_t(m);
  }

  uint32_t pow(uint32_t k) const { return uint32_t(ipow(p, k)); }

  bool operator==(const LevelContext&) const = default;

  void require_level(uint32_t k) const {
    if (k < 1 || k > N) throw ParamError("subgroup level k out of range [1, N]");
  }
};

// SplitMix64: tiny deterministic generator used wherever seeded
// reproducibility across platforms matters.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n); deterministic, bias immaterial here.
  uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace sl2lab
