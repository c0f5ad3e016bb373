#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sl2lab/level.hpp"

namespace sl2lab {

// Determinant-1 matrix over Z/p^N.  Carries its context so mixed-context
// products can be rejected.
struct GroupElement {
  LevelContext ctx;
  uint32_t a = 1, b = 0, c = 0, d = 1;

  GroupElement() = default;
  GroupElement(const LevelContext& ctx_, uint32_t a_, uint32_t b_, uint32_t c_, uint32_t d_);

  static GroupElement identity(const LevelContext& ctx);

  uint32_t det() const;
  // Membership in G(p^k): a = d = 1 and b = c = 0 mod p^k.
  bool in_G(uint32_t k = 1) const;

  bool operator==(const GroupElement& o) const {
    return ctx == o.ctx && a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
// g h g^{-1}.
GroupElement conjugate(const GroupElement& g, const GroupElement& h);

// The finite group G(p^k0)/G(p^N), with elements indexed by
// ((a-1)/p^k0, b/p^k0, c/p^k0) in [0, p^(N-k0))^3; d is recovered from the
// determinant.  k0 = 1 is the ambient group used everywhere except the
// p = 2 Iwasawa runs based at G(4).
class LevelGroup {
 public:
  LevelGroup(const LevelContext& ctx, uint32_t base_level = 1);

  const LevelContext& ctx() const { return ctx_; }
  uint32_t base_level() const { return base_; }
  uint32_t unit_count() const { return u_; }  // p^(N - k0)
  uint64_t size() const { return size_; }

  uint64_t encode(const GroupElement& g) const;
  const GroupElement& decode(uint64_t idx) const { return table_[idx]; }

  uint64_t mul(uint64_t i, uint64_t j) const;
  uint64_t inv(uint64_t i) const;
  uint64_t identity_index() const;

  // Multiplicative order of the element in this finite group.
  uint64_t element_order(uint64_t i) const;

 private:
  LevelContext ctx_;
  uint32_t base_;
  uint32_t step_;  // p^k0
  uint32_t u_;
  uint64_t size_;
  std::vector<GroupElement> table_;
};

// t-fold direct product of a LevelGroup; the carrier for group algebras
// and coinvariant computations.  Elements are mixed-radix indices.
class Carrier {
 public:
  Carrier(const LevelGroup& base, uint32_t t);

  const LevelGroup& base() const { return base_; }
  uint32_t copies() const { return t_; }
  uint64_t size() const { return size_; }

  uint64_t mul(uint64_t i, uint64_t j) const;
  uint64_t inv(uint64_t i) const;
  uint64_t identity_index() const;
  uint64_t element_order(uint64_t i) const;

  uint64_t component(uint64_t idx, uint32_t slot) const;
  uint64_t assemble(const std::vector<uint64_t>& parts) const;
  // Embed a base-group element index into the given slot (identity elsewhere).
  uint64_t embed(uint64_t base_idx, uint32_t slot) const;

 private:
  const LevelGroup& base_;
  uint32_t t_;
  uint64_t size_;
};

}  // namespace sl2lab
