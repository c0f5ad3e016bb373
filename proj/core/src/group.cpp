#include "sl2lab/group.hpp"

namespace sl2lab {

GroupElement::GroupElement(const LevelContext& ctx_, uint32_t a_, uint32_t b_, uint32_t c_,
                           uint32_t d_)
    : ctx(ctx_), a(a_ % ctx_.modulus), b(b_ % ctx_.modulus), c(c_ % ctx_.modulus),
      d(d_ % ctx_.modulus) {
  if (det() != 1 % ctx.modulus) throw DomainError("GroupElement: determinant is not 1");
}

GroupElement GroupElement::identity(const LevelContext& ctx) {
  return GroupElement(ctx, 1, 0, 0, 1);
}

uint32_t GroupElement::det() const {
  uint32_t m = ctx.modulus;
  return sub_mod(mul_mod(a, d, m), mul_mod(b, c, m), m);
}

bool GroupElement::in_G(uint32_t k) const {
  uint32_t q = ctx.pow(k);
  return (a % q) == 1 % q && (d % q) == 1 % q && (b % q) == 0 && (c % q) == 0;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (!(g.ctx == h.ctx)) throw ContextError("multiply: mismatched level contexts");
  uint32_t m = g.ctx.modulus;
  GroupElement r;
  r.ctx = g.ctx;
  r.a = add_mod(mul_mod(g.a, h.a, m), mul_mod(g.b, h.c, m), m);
  r.b = add_mod(mul_mod(g.a, h.b, m), mul_mod(g.b, h.d, m), m);
  r.c = add_mod(mul_mod(g.c, h.a, m), mul_mod(g.d, h.c, m), m);
  r.d = add_mod(mul_mod(g.c, h.b, m), mul_mod(g.d, h.d, m), m);
  return r;
}

GroupElement inverse(const GroupElement& g) {
  uint32_t m = g.ctx.modulus;
  GroupElement r;
  r.ctx = g.ctx;
  r.a = g.d;
  r.b = sub_mod(0, g.b, m);
  r.c = sub_mod(0, g.c, m);
  r.d = g.a;
  return r;
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h) {
  return multiply(multiply(g, h), inverse(g));
}

LevelGroup::LevelGroup(const LevelContext& ctx, uint32_t base_level) : ctx_(ctx), base_(base_level) {
  if (base_ < 1 || base_ > ctx_.N) throw ParamError("LevelGroup: base level out of range");
  step_ = ctx_.pow(base_);
  u_ = ctx_.pow(ctx_.N - base_);
  size_ = uint64_t(u_) * u_ * u_;
  if (size_ > (uint64_t(1) << 21)) throw ResourceError("LevelGroup: order exceeds 2^21 table cap");

  table_.resize(size_);
  uint32_t m = ctx_.modulus;
  // Unit inverses for 1 + p^k0 * i.
  std::vector<uint32_t> ainv(u_);
  for (uint32_t i = 0; i < u_; ++i)
    ainv[i] = inv_mod(uint32_t((1 + uint64_t(step_) * i) % m), m);
  for (uint32_t ia = 0; ia < u_; ++ia) {
    uint32_t a = (1 + uint64_t(step_) * ia) % m;
    for (uint32_t ib = 0; ib < u_; ++ib) {
      uint32_t b = uint32_t((uint64_t(step_) * ib) % m);
      for (uint32_t ic = 0; ic < u_; ++ic) {
        uint32_t c = uint32_t((uint64_t(step_) * ic) % m);
        uint32_t d = mul_mod(add_mod(1, mul_mod(b, c, m), m), ainv[ia], m);
        GroupElement g;
        g.ctx = ctx_;
        g.a = a;
        g.b = b;
        g.c = c;
        g.d = d;
        table_[(uint64_t(ia) * u_ + ib) * u_ + ic] = g;
      }
    }
  }
}

uint64_t LevelGroup::encode(const GroupElement& g) const {
  if (!(g.ctx == ctx_)) throw ContextError("LevelGroup::encode: mismatched context");
  if (!g.in_G(base_)) throw DomainError("LevelGroup::encode: element outside G(p^k0)");
  uint32_t ia = (g.a - 1) / step_;
  uint32_t ib = g.b / step_;
  uint32_t ic = g.c / step_;
  return (uint64_t(ia) * u_ + ib) * u_ + ic;
}

uint64_t LevelGroup::mul(uint64_t i, uint64_t j) const {
  return encode(multiply(table_[i], table_[j]));
}

uint64_t LevelGroup::inv(uint64_t i) const { return encode(inverse(table_[i])); }

uint64_t LevelGroup::identity_index() const {
  return encode(GroupElement::identity(ctx_));
}

uint64_t LevelGroup::element_order(uint64_t i) const {
  uint64_t e = identity_index(), acc = i, n = 1;
  while (acc != e) {
    acc = mul(acc, i);
    ++n;
  }
  return n;
}

Carrier::Carrier(const LevelGroup& base, uint32_t t) : base_(base), t_(t) {
  if (t < 1 || t > 4) throw ParamError("Carrier: t out of range [1, 4]");
  size_ = 1;
  for (uint32_t i = 0; i < t; ++i) {
    if (size_ > (uint64_t(1) << 26) / base.size())
      throw ResourceError("Carrier: product group order exceeds 2^26");
    size_ *= base.size();
  }
}

uint64_t Carrier::mul(uint64_t i, uint64_t j) const {
  uint64_t r = 0, scale = 1, n = base_.size();
  for (uint32_t s = 0; s < t_; ++s) {
    r += base_.mul(i % n, j % n) * scale;
    i /= n;
    j /= n;
    scale *= n;
  }
  return r;
}

uint64_t Carrier::inv(uint64_t i) const {
  uint64_t r = 0, scale = 1, n = base_.size();
  for (uint32_t s = 0; s < t_; ++s) {
    r += base_.inv(i % n) * scale;
    i /= n;
    scale *= n;
  }
  return r;
}

uint64_t Carrier::identity_index() const {
  std::vector<uint64_t> parts(t_, base_.identity_index());
  return assemble(parts);
}

uint64_t Carrier::element_order(uint64_t i) const {
  uint64_t e = identity_index(), acc = i, n = 1;
  while (acc != e) {
    acc = mul(acc, i);
    ++n;
  }
  return n;
}

uint64_t Carrier::component(uint64_t idx, uint32_t slot) const {
  uint64_t n = base_.size();
  for (uint32_t s = 0; s < slot; ++s) idx /= n;
  return idx % n;
}

uint64_t Carrier::assemble(const std::vector<uint64_t>& parts) const {
  if (parts.size() != t_) throw ParamError("Carrier::assemble: wrong arity");
  uint64_t r = 0, scale = 1, n = base_.size();
  for (uint32_t s = 0; s < t_; ++s) {
    r += parts[s] * scale;
    scale *= n;
  }
  return r;
}

uint64_t Carrier::embed(uint64_t base_idx, uint32_t slot) const {
  std::vector<uint64_t> parts(t_, base_.identity_index());
  parts[slot] = base_idx;
  return assemble(parts);
}

}  // namespace sl2lab
