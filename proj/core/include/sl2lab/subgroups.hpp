#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/group.hpp"

namespace sl2lab {

// Subgroup families of G = G(p) used throughout:
//   G(p^k)  : a-1, b, c, d-1 = 0 mod p^k
//   H(p^k)  : c = 0 mod p^k, intersected with G
//   T(p^k)  : b = c = 0 mod p^k, intersected with G
//   T(l,j)  : {diag(a, a^-1) : a = 1 mod p^(l-j)} * G(p^l)
//   T(l,j)', T(l,j)'' : conjugates of T(l,j) by N_j = (1, p^(j-1); 0, 1)
//                       and by its transpose.
//
// H is taken on the lower-left entry.  That is the variant stabilized by
// the coset map phi(g) = c/a, so G/H(p^k) is carried to p.Z_p / p^k
// exactly, and the diagonal conjugation carries H(p^k) to T(p^((k+1)/2)).
enum class Family { G, H, T, TLJ, TLJ_PRIME, TLJ_DPRIME };

struct SubgroupSpec {
  Family family = Family::G;
  uint32_t k = 1;  // for G/H/T
  uint32_t l = 0, j = 0;  // for the TLJ variants

  static SubgroupSpec Gk(uint32_t k) { return {Family::G, k, 0, 0}; }
  static SubgroupSpec Hk(uint32_t k) { return {Family::H, k, 0, 0}; }
  static SubgroupSpec Tk(uint32_t k) { return {Family::T, k, 0, 0}; }
  static SubgroupSpec Tlj(uint32_t l, uint32_t j) { return {Family::TLJ, 1, l, j}; }
  static SubgroupSpec TljPrime(uint32_t l, uint32_t j) { return {Family::TLJ_PRIME, 1, l, j}; }
  static SubgroupSpec TljDoublePrime(uint32_t l, uint32_t j) {
    return {Family::TLJ_DPRIME, 1, l, j};
  }

  std::string name(uint32_t p) const;
  void validate(const LevelContext& ctx) const;
};

// A subgroup of the level-N quotient: a certified generator list plus the
// enumerated element set (ambient LevelGroup indices, sorted).
struct SubgroupRealization {
  std::vector<GroupElement> generators;
  std::optional<std::vector<uint64_t>> elements;
  uint64_t order = 0;
  // False when the textbook generator recipe had to be augmented to reach
  // the defining set (happens for p = 2 families with a full unit
  // diagonal, where 1 + p does not generate Z_2^x).
  bool recipe_complete = true;

  bool contains(const LevelGroup& lg, const GroupElement& g) const;
  bool contains_index(uint64_t idx) const;
};

inline constexpr uint64_t kDefaultEnumCap = uint64_t(1) << 20;

// Generator list per the family recipe (with the p = 2 diagonal
// augmentation where the recipe alone cannot reach the defining set).
std::vector<GroupElement> subgroup_generators(const SubgroupSpec& spec, const LevelContext& ctx);

// The defining element set, built directly from the congruence conditions
// (no generators involved).
std::vector<uint64_t> canonical_subgroup_set(const SubgroupSpec& spec, const LevelGroup& lg);

// Breadth-first closure of a generator list inside the level group.
std::vector<uint64_t> closure(const LevelGroup& lg, const std::vector<uint64_t>& gen_idx,
                              uint64_t cap = kDefaultEnumCap);

// Full realization: generators certified (and minimally augmented, in a
// deterministic way) until their closure equals the canonical set.
SubgroupRealization realize(const SubgroupSpec& spec, const LevelGroup& lg,
                            uint64_t cap = kDefaultEnumCap);

// Closure of an already-built generator list; throws ResourceError above cap.
SubgroupRealization enumerate_subgroup(const LevelGroup& lg,
                                       const std::vector<GroupElement>& generators,
                                       uint64_t cap = kDefaultEnumCap);

// |outer| / |inner|; ContainmentError if inner is not contained in outer.
uint64_t subgroup_index(const LevelGroup& lg, const SubgroupRealization& inner,
                        const SubgroupRealization& outer);

// Mutual generator membership plus order equality.
bool subgroups_equal(const LevelGroup& lg, const SubgroupRealization& a,
                     const SubgroupRealization& b);

SubgroupRealization conjugate_subgroup(const LevelGroup& lg, const GroupElement& g,
                                       const SubgroupRealization& sub, uint64_t cap = kDefaultEnumCap);

GroupElement nj_element(const LevelContext& ctx, uint32_t j);       // (1, p^(j-1); 0, 1)
GroupElement nj_bar_element(const LevelContext& ctx, uint32_t j);   // (1, 0; p^(j-1), 1)

struct ProductIdentityReport {
  bool generated_equal = false;   // <T, T', T''> == T(l-1, j-1)
  bool set_product_equal = false; // T * T' * T'' (element products) == T(l-1, j-1)
  uint64_t generated_order = 0;
  uint64_t expected_order = 0;
  uint32_t min_faithful_N = 0;
};

// Eq. (product): T(l,j) x T(l,j)' x T(l,j)'' = T(l-1, j-1), checked both as
// generated subgroup and as the literal product set.
ProductIdentityReport product_identity_report(uint32_t l, uint32_t j, const LevelGroup& lg,
                                              uint64_t cap = kDefaultEnumCap);
bool verify_product_identity(uint32_t l, uint32_t j, const LevelGroup& lg,
                             uint64_t cap = kDefaultEnumCap);

struct IntersectionIdentityReport {
  // T intersect <T', T''> == T(l, j-1), and the two rotations, each
  // compared against the matching N_j / N_j-bar conjugate of T(l, j-1).
  bool rotation_ok[3] = {false, false, false};
  uint64_t intersection_order[3] = {0, 0, 0};
  uint64_t expected_order = 0;
  bool all_ok() const { return rotation_ok[0] && rotation_ok[1] && rotation_ok[2]; }
};

IntersectionIdentityReport intersection_identity_report(uint32_t l, uint32_t j,
                                                        const LevelGroup& lg,
                                                        uint64_t cap = kDefaultEnumCap);
bool verify_intersection_identity(uint32_t l, uint32_t j, const LevelGroup& lg,
                                  uint64_t cap = kDefaultEnumCap);

struct ConjugationReport {
  bool ok = false;
  uint32_t result_level = 0;   // N - s after clearing denominators
  uint32_t target_k = 0;       // (k+1)/2
  uint64_t conjugate_order = 0;
  uint64_t target_order = 0;
};

// Conjugating H(p^k), k odd, by the diagonal with p-power entry of
// exponent s = (k-1)/2 scales b by p^s and divides c by p^s; the result is
// compared against T(p^((k+1)/2)) at level N - s.
ConjugationReport conjugate_H_to_T(uint32_t k, const LevelContext& ctx,
                                   uint64_t cap = kDefaultEnumCap);

}  // namespace sl2lab
