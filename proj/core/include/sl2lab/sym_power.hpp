#pragma once

#include <cstdint>
#include <vector>

#include "sl2lab/coset_module.hpp"
#include "sl2lab/fp_linalg.hpp"
#include "sl2lab/group.hpp"

namespace sl2lab {

// Exact small rational; numerator/denominator kept reduced, den > 0.
// Overflow is guarded with 128-bit intermediates and throws rather than
// wrapping.
struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n, int64_t d = 1);

  Rat operator+(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  bool operator==(const Rat& o) const = default;

  bool is_p_integral(uint32_t p) const { return den % p != 0; }
  // Value mod p; requires p-integrality.
  uint8_t mod_p(uint32_t p) const;
};

// Homogeneous two-variable polynomial q(a, c) of fixed degree with
// rational coefficients; coef[i] multiplies a^(deg-i) c^i.  Realizes a
// function on G through the first column (a, c) of the matrix.
struct HomPoly {
  uint32_t deg = 0;
  std::vector<Rat> coef;

  explicit HomPoly(uint32_t d) : deg(d), coef(d + 1) {}

  Rat eval(int64_t a, int64_t c) const;
  // Substitution (a, c) -> (m00 a + m01 c, m10 a + m11 c).
  HomPoly substitute(int64_t m00, int64_t m01, int64_t m10, int64_t m11) const;
};

struct SymBasisFunction {
  uint32_t t = 0;  // index in 0..d
  HomPoly poly;    // a^(d-t) * prod_{i<t} (c - i p a) / (p^t t!)
};

// Spanning set of the lattice of integral-valued functions in Sym^d,
// adequate mod p: the t-th function reduces to binom(phi(g)/p, t).
std::vector<SymBasisFunction> sym_lattice_basis(uint32_t p, uint32_t k, uint32_t d);

// Complete integrality proof by finite check: p^t t! f_t has integer
// coefficients and its values mod p^w, w = v_p(p^t t!), depend only on
// (a, c) mod p^w; all residues with a = 1 (p), c = 0 (p) are checked.
bool integrality_certificate(uint32_t p, uint32_t d, const SymBasisFunction& f);
// Spot check: exact rational evaluation on seeded random integer points of
// the domain.
bool integrality_spot_check(uint32_t p, uint32_t k, const SymBasisFunction& f, uint32_t samples,
                            Rng& rng);

// Reduction of f through phi: x -> f(1, p x) mod p.
FpVec sym_reduce(uint32_t p, uint32_t k, const HomPoly& f);

// Left translation action on functions-on-G: (g . f)(h) = f(g^-1 h), i.e.
// substitution by the adjugate of (a lift of) g.
HomPoly sym_act(const GroupElement& g, const HomPoly& f);

struct SymReductionResult {
  FpSubspace image;
  uint32_t m = 0;          // image == F(m); the measured resolution of d vs d+1
  bool g_invariant = false;
};

// Image of the lattice in F_p[p.Z_p/p^k]; throws StructuralError if the
// image is not one of the F(m).
SymReductionResult sym_reduction(uint32_t p, uint32_t k, uint32_t d);

// reduce(g . f) == g . reduce(f) on the basis, for the generators of G(p)
// and `samples` seeded random elements.
bool sym_equivariance_check(uint32_t p, uint32_t k, uint32_t d, uint32_t samples, Rng& rng);

}  // namespace sl2lab
