#include "sl2lab/coset_module.hpp"

#include <algorithm>

#include "sl2lab/subgroups.hpp"

namespace sl2lab {

CosetSpace::CosetSpace(uint32_t p_, uint32_t k_) : p(p_), k(k_) {
  if (k < 1) throw ParamError("CosetSpace: k >= 1 required");
  npoints = uint32_t(ipow(p, k - 1));
}

uint32_t phi(const GroupElement& g, uint32_t k) {
  g.ctx.require_level(k);
  if (!g.in_G(1)) throw DomainError("phi: element outside G(p)");
  uint32_t q = g.ctx.pow(k);
  uint32_t z = mul_mod(g.c % q, inv_mod(g.a % q, q), q);
  return z / g.ctx.p;
}

uint32_t flt_action(const GroupElement& g, uint32_t x, uint32_t k) {
  g.ctx.require_level(k);
  uint32_t p = g.ctx.p;
  uint32_t q = g.ctx.pow(k);
  uint32_t n = uint32_t(ipow(p, k - 1));
  if (x >= n) throw ParamError("flt_action: point out of range");
  uint32_t z = p * x % q;
  uint32_t den = add_mod(mul_mod(g.b % q, z, q), g.a % q, q);
  if (den % p == 0) throw DomainError("flt_action: denominator is not a unit (g outside G(p))");
  uint32_t num = add_mod(mul_mod(g.d % q, z, q), g.c % q, q);
  uint32_t w = mul_mod(num, inv_mod(den, q), q);
  return w / p;
}

std::vector<uint32_t> point_permutation(const GroupElement& g, uint32_t k) {
  uint32_t n = uint32_t(ipow(g.ctx.p, k - 1));
  std::vector<uint32_t> perm(n);
  for (uint32_t x = 0; x < n; ++x) perm[x] = flt_action(g, x, k);
  return perm;
}

FpMat action_matrix(const GroupElement& g, uint32_t k) {
  auto perm = point_permutation(g, k);
  FpMat m(g.ctx.p, uint32_t(perm.size()), uint32_t(perm.size()));
  for (uint32_t x = 0; x < perm.size(); ++x) m.at(perm[x], x) = 1;
  return m;
}

FpVec apply_point_action(const GroupElement& g, uint32_t k, const FpVec& f) {
  auto perm = point_permutation(g, k);
  if (f.size() != perm.size()) throw ParamError("apply_point_action: size mismatch");
  FpVec out(f.size(), 0);
  for (uint32_t x = 0; x < f.size(); ++x) out[perm[x]] = f[x];
  return out;
}

namespace {

GroupElement random_G_element(const LevelContext& ctx, Rng& rng) {
  uint32_t m = ctx.modulus, p = ctx.p;
  uint32_t a = uint32_t((1 + p * rng.below(m / p)) % m);
  uint32_t b = uint32_t(p * rng.below(m / p) % m);
  uint32_t c = uint32_t(p * rng.below(m / p) % m);
  uint32_t d = mul_mod(add_mod(1, mul_mod(b, c, m), m), inv_mod(a, m), m);
  return GroupElement(ctx, a, b, c, d);
}

}  // namespace

bool action_convention_check(const LevelContext& ctx, uint32_t k, uint32_t samples, Rng& rng) {
  uint32_t n = uint32_t(ipow(ctx.p, k - 1));
  for (uint32_t s = 0; s < samples; ++s) {
    GroupElement g = random_G_element(ctx, rng);
    GroupElement h = random_G_element(ctx, rng);
    if (phi(multiply(g, h), k) != flt_action(g, phi(h, k), k)) return false;
    uint32_t x = uint32_t(rng.below(n));
    if (flt_action(multiply(g, h), x, k) != flt_action(g, flt_action(h, x, k), k)) return false;
    // Bijectivity.
    auto perm = point_permutation(g, k);
    std::vector<uint8_t> hit(n, 0);
    for (uint32_t y : perm) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
  }
  return true;
}

uint8_t binom_mod_p(uint64_t n, uint64_t r, uint32_t p) {
  // Lucas: multiply binomials of base-p digits.
  uint32_t acc = 1;
  while (r > 0 || n > 0) {
    uint32_t nd = uint32_t(n % p), rd = uint32_t(r % p);
    if (rd > nd) return 0;
    // Small Pascal value binom(nd, rd) mod p, nd < p <= 251.
    uint32_t v = 1;
    for (uint32_t i = 1; i <= rd; ++i) {
      v = v * (nd - i + 1) % p * inv_mod(i % p, p) % p;
    }
    acc = acc * v % p;
    n /= p;
    r /= p;
  }
  return uint8_t(acc);
}

FpVec mahler(uint32_t p, uint32_t k, uint32_t t) {
  CosetSpace cs(p, k);
  if (t >= cs.npoints) throw ParamError("mahler: t out of range [0, p^(k-1))");
  FpVec v(cs.npoints);
  for (uint32_t x = 0; x < cs.npoints; ++x) v[x] = binom_mod_p(x, t, p);
  return v;
}

FpSubspace filtration_F(uint32_t p, uint32_t k, uint32_t i) {
  CosetSpace cs(p, k);
  if (i > cs.npoints) throw ParamError("filtration_F: i out of range [0, p^(k-1)]");
  std::vector<FpVec> rows;
  for (uint32_t t = 0; t < i; ++t) rows.push_back(mahler(p, k, t));
  return FpSubspace::from_vectors(p, cs.npoints, rows);
}

namespace {

GroupElement nbar_element(const LevelContext& ctx) {
  return GroupElement(ctx, 1, 0, ctx.modulus - ctx.p % ctx.modulus, 1);
}

}  // namespace

bool shift_recurrence_check(uint32_t p, uint32_t k, uint32_t t) {
  CosetSpace cs(p, k);
  if (t >= cs.npoints) throw ParamError("shift_recurrence_check: t out of range");
  LevelContext ctx(p, k);
  GroupElement nbar = nbar_element(ctx);
  FpVec lhs = apply_point_action(nbar, k, mahler(p, k, t));
  FpVec rhs = mahler(p, k, t);
  if (t >= 1) {
    FpVec prev = mahler(p, k, t - 1);
    for (uint32_t x = 0; x < cs.npoints; ++x) rhs[x] = uint8_t((rhs[x] + prev[x]) % p);
  }
  return lhs == rhs;
}

CensusResult invariant_subspace_census(uint32_t p, uint32_t k) {
  CosetSpace cs(p, k);
  uint32_t n = cs.npoints;
  if (n > 4096)
    throw ResourceError("invariant_subspace_census: dimension " + std::to_string(n) +
                        " exceeds the linear-algebra cap 4096");
  CensusResult res;
  // Shift operator: the N-bar action at level k.
  FpMat shift = k == 1 ? FpMat::identity(p, 1) : action_matrix(nbar_element(LevelContext(p, k)), k);
  FpMat nil(p, n, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t v = shift.at(i, j);
      if (i == j) v = (v + p - 1) % p;
      nil.at(i, j) = uint8_t(v % p);
    }
  res.shift_rank = rank(nil);
  res.single_block = res.shift_rank + 1 == n;

  // Candidate subspaces: kernels of nil^i; for a single Jordan block there
  // is exactly one candidate per dimension.
  std::vector<FpSubspace> candidates;
  candidates.push_back(FpSubspace::zero(p, n));
  FpMat pw = FpMat::identity(p, n);
  for (uint32_t i = 1; i <= n; ++i) {
    pw = pw * nil;
    auto kb = kernel_basis(pw);
    candidates.push_back(FpSubspace::from_vectors(p, n, kb));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const FpSubspace& a, const FpSubspace& b) { return a.dim() < b.dim(); });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Filter by invariance under the full group.  The generator recipe for
  // G(p) is complete for every p and k: any g in G(p) factors as
  // L(c/a) diag(a, a^-1) U(b/a) since a is a unit.
  std::vector<FpMat> gens;
  if (k >= 2) {
    for (const auto& g : subgroup_generators(SubgroupSpec::Gk(1), LevelContext(p, k)))
      gens.push_back(action_matrix(g, k));
  }
  for (auto& S : candidates) {
    bool inv = true;
    for (const auto& m : gens) {
      for (const auto& b : S.basis)
        if (!S.contains(m.apply(b))) {
          inv = false;
          break;
        }
      if (!inv) break;
    }
    if (inv) res.subspaces.push_back(S);
  }
  return res;
}

QuotientIsoResult quotient_iso(uint32_t p, uint32_t k, uint32_t a, uint32_t l) {
  if (l < 1 || l > k) throw ParamError("quotient_iso: need 1 <= l <= k");
  uint64_t depth = ipow(p, k - l);
  if (a >= depth) throw ParamError("quotient_iso: need 0 <= a < p^(k-l)");
  uint32_t nk = uint32_t(ipow(p, k - 1));
  uint32_t nl = uint32_t(ipow(p, l - 1));

  QuotientIsoResult res;
  // (T f)[w] = (Delta^a of f restricted to the coset z = p*w + p^l * y)(0)
  //          = sum_i (-1)^(a-i) binom(a, i) f[w + p^(l-1) * i].
  res.map = FpMat(p, nl, nk);
  for (uint32_t w = 0; w < nl; ++w)
    for (uint32_t i = 0; i <= a; ++i) {
      uint32_t coef = binom_mod_p(a, i, p);
      if ((a - i) % 2 == 1) coef = (p - coef) % p;
      res.map.at(w, w + nl * i) = uint8_t((res.map.at(w, w + nl * i) + coef) % p);
    }

  FpSubspace dom = filtration_F(p, k, uint32_t((a + 1) * nl));
  FpSubspace ker_expected = filtration_F(p, k, uint32_t(a * nl));

  // Kernel of T restricted to dom equals F(a p^(l-1)), and T maps dom onto
  // the full level-l space.
  RowReducer image(p, nl);
  std::vector<FpVec> images;
  for (const auto& b : dom.basis) images.push_back(res.map.apply(b));
  uint32_t img_rank = 0;
  for (const auto& v : images) img_rank += image.add(v) ? 1 : 0;
  uint32_t ker_dim = dom.dim() - img_rank;
  bool ker_contained = true;
  for (const auto& b : ker_expected.basis)
    if (!dom.contains(b) || res.map.apply(b) != FpVec(nl, 0)) ker_contained = false;
  res.kernel_ok = ker_contained && ker_dim == ker_expected.dim() && img_rank == nl;

  // Equivariance on generators of G(p): T(g . f) == g . T(f) on dom.
  // Equivariance is multiplicative, so generators suffice.
  res.equivariant = true;
  if (k >= 2) {
    auto G = subgroup_generators(SubgroupSpec::Gk(1), LevelContext(p, k));
    for (const auto& g : G) {
      GroupElement gl_low(LevelContext(p, l), g.a, g.b, g.c, g.d);
      for (const auto& b : dom.basis) {
        FpVec lhs = res.map.apply(apply_point_action(g, k, b));
        FpVec rhs = l >= 2 ? apply_point_action(gl_low, l, res.map.apply(b)) : res.map.apply(b);
        if (lhs != rhs) {
          res.equivariant = false;
          break;
        }
      }
      if (!res.equivariant) break;
    }
  }
  return res;
}

Decomposition decompose_submodule(uint32_t p, uint32_t k, uint32_t d, bool relaxed,
                                  uint32_t dim_cap) {
  CosetSpace cs(p, k);
  if (d > cs.npoints) throw ParamError("decompose_submodule: d exceeds p^(k-1)");
  if (!relaxed && (k - 1) % 4 != 0)
    throw ParamError("decompose_submodule: default mode needs 4 | k-1; use relaxed mode");
  Decomposition out;
  out.d = d;
  out.relaxed = relaxed;
  uint32_t radix_log = relaxed ? 1 : 4;
  uint64_t base = ipow(p, radix_log);

  // d = sum of p^(radix_log * alpha(i)) with alpha non-increasing; each
  // digit contributes that many repeated powers.
  std::vector<uint32_t> alphas;
  uint64_t rem = d, power = 0;
  while (rem > 0) {
    uint32_t digit = uint32_t(rem % base);
    for (uint32_t i = 0; i < digit; ++i) alphas.push_back(uint32_t(power));
    rem /= base;
    ++power;
  }
  std::sort(alphas.rbegin(), alphas.rend());

  uint32_t s = 0;
  for (uint32_t alpha : alphas) {
    DecompositionStep step;
    step.level = radix_log * alpha + 1;
    step.step_dim = uint32_t(ipow(p, step.level - 1));
    uint32_t a = s / step.step_dim;  // exact: step sizes divide the partial sum
    s += step.step_dim;
    step.partial_sum = s;
    if (cs.npoints <= dim_cap) {
      step.verified = quotient_iso(p, k, a, step.level).ok();
    }
    out.steps.push_back(step);
  }
  return out;
}

}  // namespace sl2lab
