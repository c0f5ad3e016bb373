#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sl2lab/fp_linalg.hpp"
#include "sl2lab/group.hpp"

namespace sl2lab {

// Multi-index over the 3t generators; entries below p^(N-k0) index basis
// monomials.
using MonomialIndex = std::vector<uint32_t>;

uint64_t monomial_degree(const MonomialIndex& a);
// Graded order: compare total degree, ties lexicographically (leftmost
// entry first).
bool grlex_less(const MonomialIndex& a, const MonomialIndex& b);
bool entrywise_leq(const MonomialIndex& a, const MonomialIndex& b);
MonomialIndex add_indices(const MonomialIndex& a, const MonomialIndex& b);
MonomialIndex sub_indices(const MonomialIndex& a, const MonomialIndex& b);

// F_p[GG / GG_N] for GG a t-fold product of copies of G(p^k0), with the
// z_i = 1 - g_i generators of the completed group ring truncated at level
// N.  Dimension p^(3 t (N - k0)).
class TruncatedAlgebra {
 public:
  TruncatedAlgebra(uint32_t p, uint32_t N, uint32_t t, uint32_t base_level = 1);
  TruncatedAlgebra(const TruncatedAlgebra&) = delete;
  TruncatedAlgebra& operator=(const TruncatedAlgebra&) = delete;

  uint32_t p() const { return ctx_.p; }
  uint32_t N() const { return ctx_.N; }
  uint32_t t() const { return t_; }
  uint32_t base_level() const { return base_; }
  uint32_t num_generators() const { return 3 * t_; }
  uint64_t dim() const { return carrier_->size(); }
  uint32_t exponent_cap() const { return q_; }  // p^(N - k0)

  const Carrier& carrier() const { return *carrier_; }
  const LevelGroup& level_group() const { return *lg_; }
  uint64_t generator_element(uint32_t i) const { return gen_elt_[i]; }

  FpVec unit() const;  // the identity group element as an algebra element
  FpVec zero() const { return FpVec(dim(), 0); }

  // Left multiplication by the group element with carrier index g.
  FpVec mult_group_left(uint64_t g, const FpVec& v) const;
  FpVec mult_group_right(const FpVec& v, uint64_t g) const;
  // Left/right multiplication by z_i = 1 - g_i.
  FpVec mult_z_left(uint32_t i, const FpVec& v) const;
  FpVec mult_z_right(const FpVec& v, uint32_t i) const;
  // Left multiplication by z^delta (ordered product).
  FpVec mult_monomial_left(const MonomialIndex& delta, const FpVec& v) const;

  FpVec z_generator(uint32_t i) const;          // z_i as an element
  FpVec monomial(const MonomialIndex& a) const; // z^a = z_1^{a_1} ... z_d^{a_d}
  uint8_t augmentation(const FpVec& v) const;

  // All basis multi-indices (entries < exponent_cap) in graded-lex order.
  const std::vector<MonomialIndex>& index_list() const { return indices_; }
  // Position of a in the graded-lex enumeration; throws if out of range.
  uint64_t index_position(const MonomialIndex& a) const;
  // Successor in the graded-lex order; throws past the last index.
  MonomialIndex successor(const MonomialIndex& a) const;

  // Monomial matrix (columns are z^a in graded-lex order), cached.
  const FpMat& monomial_matrix() const;
  bool monomial_basis_full_rank() const;
  // Coordinates of v in the monomial basis (requires full rank).
  FpVec monomial_coordinates(const FpVec& v) const;

 private:
  LevelContext ctx_;
  uint32_t t_, base_, q_;
  std::unique_ptr<LevelGroup> lg_;
  std::unique_ptr<Carrier> carrier_;
  std::vector<uint64_t> gen_elt_;
  std::vector<std::vector<uint32_t>> permL_, permR_;  // h -> g_i h, h -> h g_i
  std::vector<MonomialIndex> indices_;
  mutable std::unique_ptr<FpMat> monomial_mat_;
  mutable std::unique_ptr<FpMat> monomial_inv_;
  mutable int basis_rank_ = -1;
};

// z^a z^b - z^(a+b) lies in the span of monomials of total degree
// > |a| + |b| (the associated graded ring is commutative).
bool graded_commutativity_check(const TruncatedAlgebra& A, const MonomialIndex& a,
                                const MonomialIndex& b);

struct IdealAlphaResult {
  FpSubspace span;
  bool two_sided = false;
};

// I_alpha: span of the basis monomials z^beta with beta >= alpha in the
// graded-lex order; two-sidedness verified by multiplying the basis
// monomials by every z_i on both sides.
IdealAlphaResult ideal_I_alpha(const TruncatedAlgebra& A, const MonomialIndex& alpha,
                               bool check_two_sided = true);

struct IdealIpResult {
  FpSubspace kernel;        // of the projection A_N -> F_p[GG / GG_l]
  FpSubspace monomial_span; // span{z^a : a not <= (p^(l-k0)-1, ...)}
  bool descriptions_equal = false;
  uint64_t codim = 0;
};

IdealIpResult ideal_Ip(const TruncatedAlgebra& A, uint32_t l);

// Cyclic left module A / A x presented in ambient coordinates: the
// relation space is the left ideal A x.  x = 0 gives the regular module.
struct AlgebraModule {
  const TruncatedAlgebra* A = nullptr;
  FpSubspace relations;  // RREF basis of A x
  uint64_t dim = 0;      // dim A - dim relations

  static AlgebraModule cyclic(const TruncatedAlgebra& A, const FpVec& x);

  // Ambient span of M_alpha = I_alpha M (contains the relation space).
  FpSubspace filtration_piece(const MonomialIndex& alpha) const;
};

struct FiltrationStep {
  MonomialIndex alpha;
  uint64_t piece_dim = 0;     // dim of M_alpha as a subquotient of M
  uint64_t quotient_dim = 0;  // dim M_alpha / M_alpha'
};

// The full chain M_alpha down the graded-lex order (small contexts only).
std::vector<FiltrationStep> module_filtration(const AlgebraModule& M);

struct SurjectionReport {
  bool lhs_contained = false;  // z^(a-b) M_b + M_a' subset of M_a
  bool surjective = false;     // equality
  uint64_t lhs_rank = 0, rhs_rank = 0;
};

// Multiplication by z^(alpha-beta) carries M_beta / M_beta' onto
// M_alpha / M_alpha'.
SurjectionReport surjection_check(const AlgebraModule& M, const MonomialIndex& beta,
                                  const MonomialIndex& alpha);

// |{b in S_l : b not >= a}| for triples with entries <= p^l - 1, from the
// closed form p^(3l) - prod max(p^l - a_i, 0).
uint64_t count_nonmajorizing(const MonomialIndex& alpha, uint32_t l, uint32_t p);
// Independent enumeration oracle for the same count.
uint64_t count_nonmajorizing_bruteforce(const MonomialIndex& alpha, uint32_t l, uint32_t p);

}  // namespace sl2lab
