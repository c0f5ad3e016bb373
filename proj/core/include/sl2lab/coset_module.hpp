#pragma once

#include <cstdint>
#include <vector>

#include "sl2lab/fp_linalg.hpp"
#include "sl2lab/group.hpp"

namespace sl2lab {

// Points of p.Z_p / p^k Z_p, encoded as x in [0, p^(k-1)) with z = p*x.
// G acts on points by the fractional-linear maps z -> (dz+c)/(bz+a); this
// is a left action intertwined with left translation by phi(g) = c/a, and
// the point stabilizer of 0 is H(p^k), so F_p[points] realizes
// F_p[G / H(p^k)].
struct CosetSpace {
  uint32_t p = 0, k = 0;
  uint32_t npoints = 0;  // p^(k-1)

  CosetSpace(uint32_t p_, uint32_t k_);
  uint32_t z_of(uint32_t x) const { return p * x; }
};

// phi(g) = c * a^{-1} mod p^k as a point index; DomainError if g is not in
// G(p).
uint32_t phi(const GroupElement& g, uint32_t k);

// z -> (dz + c) / (bz + a) mod p^k on point indices.
uint32_t flt_action(const GroupElement& g, uint32_t x, uint32_t k);

// perm[x] = flt_action(g, x); the module action on F_p[points] is the
// pushforward e_x -> e_perm[x].
std::vector<uint32_t> point_permutation(const GroupElement& g, uint32_t k);
FpMat action_matrix(const GroupElement& g, uint32_t k);
FpVec apply_point_action(const GroupElement& g, uint32_t k, const FpVec& f);

// Composition-order certificate run at suite startup: checks
// phi(g h) == flt(g, phi(h)) and flt(g1 g2, .) == flt(g1, flt(g2, .)) on
// random samples, plus bijectivity of the action.
bool action_convention_check(const LevelContext& ctx, uint32_t k, uint32_t samples, Rng& rng);

// Mahler basis function B_t(x) = binom(x, t) mod p, digitwise by Lucas.
FpVec mahler(uint32_t p, uint32_t k, uint32_t t);
uint8_t binom_mod_p(uint64_t n, uint64_t r, uint32_t p);

// F(i) = span of B_0 .. B_{i-1}; the unique i-dimensional subrepresentation.
FpSubspace filtration_F(uint32_t p, uint32_t k, uint32_t i);

// N-bar * B_t == B_t + B_{t-1} (t >= 1); t = 0 checks B_0 is fixed.
bool shift_recurrence_check(uint32_t p, uint32_t k, uint32_t t);

struct CensusResult {
  std::vector<FpSubspace> subspaces;  // all G-invariant subspaces, by dim
  uint32_t shift_rank = 0;            // rank of (N-bar action - identity)
  bool single_block = false;          // shift_rank == npoints - 1
};

// All G-invariant subspaces of F_p[points], found as the kernels of powers
// of the unipotent shift and filtered by invariance under generators of G.
CensusResult invariant_subspace_census(uint32_t p, uint32_t k);

struct QuotientIsoResult {
  FpMat map;             // level-k functions -> level-l functions
  bool kernel_ok = false;
  bool equivariant = false;
  bool ok() const { return kernel_ok && equivariant; }
};

// The map F((a+1)p^(l-1)) -> F_p[p.Z_p/p^l] taking f to its leading
// degree-a Mahler coefficient on each coset z + p^l Z_p; kernel must be
// F(a p^(l-1)) and the map must commute with the G-action.
QuotientIsoResult quotient_iso(uint32_t p, uint32_t k, uint32_t a, uint32_t l);

struct DecompositionStep {
  uint32_t level = 0;       // quotient is F_p[G/H(p^level)]
  uint32_t step_dim = 0;    // p^(level-1)
  uint32_t partial_sum = 0; // s(i)
  bool verified = false;    // quotient_iso certificate for this step
};

struct Decomposition {
  uint32_t d = 0;
  bool relaxed = false;     // base-p expansion extension instead of base-p^4
  std::vector<DecompositionStep> steps;
};

// Filtration of the d-dimensional submodule F(d) following the base-p^4
// expansion of d (base-p in relaxed mode).  Steps are verified via
// quotient_iso while p^(k-1) stays within dim_cap.
Decomposition decompose_submodule(uint32_t p, uint32_t k, uint32_t d, bool relaxed = false,
                                  uint32_t dim_cap = 4096);

}  // namespace sl2lab
