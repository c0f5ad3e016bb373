#include "sl2lab/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sl2lab {

std::string SubgroupSpec::name(uint32_t p) const {
  auto pk = [&](uint32_t e) { return std::to_string(p) + "^" + std::to_string(e); };
  switch (family) {
    case Family::G: return "G(" + pk(k) + ")";
    case Family::H: return "H(" + pk(k) + ")";
    case Family::T: return "T(" + pk(k) + ")";
    case Family::TLJ: return "T(" + std::to_string(l) + "," + std::to_string(j) + ")";
    case Family::TLJ_PRIME: return "T(" + std::to_string(l) + "," + std::to_string(j) + ")'";
    case Family::TLJ_DPRIME: return "T(" + std::to_string(l) + "," + std::to_string(j) + ")''";
  }
  return "?";
}

void SubgroupSpec::validate(const LevelContext& ctx) const {
  switch (family) {
    case Family::G:
    case Family::H:
    case Family::T:
      ctx.require_level(k);
      break;
    default:
      ctx.require_level(l);
      if (j > l - 1) throw ParamError("SubgroupSpec: need 0 <= j <= l-1");
  }
}

bool SubgroupRealization::contains(const LevelGroup& lg, const GroupElement& g) const {
  return contains_index(lg.encode(g));
}

bool SubgroupRealization::contains_index(uint64_t idx) const {
  if (!elements) throw ParamError("SubgroupRealization: not enumerated");
  return std::binary_search(elements->begin(), elements->end(), idx);
}

namespace {

GroupElement diag_element(const LevelContext& ctx, uint32_t a) {
  return GroupElement(ctx, a, 0, 0, inv_mod(a % ctx.modulus, ctx.modulus));
}

GroupElement upper_unipotent(const LevelContext& ctx, uint32_t x) {
  return GroupElement(ctx, 1, x % ctx.modulus, 0, 1);
}

GroupElement lower_unipotent(const LevelContext& ctx, uint32_t x) {
  return GroupElement(ctx, 1, 0, x % ctx.modulus, 1);
}

// 1 + p^m generates 1 + p^m Z_p except for p = 2, m = 1, where the unit
// group needs diag(-1) as a second generator.
void append_diag_generators(std::vector<GroupElement>& out, const LevelContext& ctx, uint32_t m) {
  out.push_back(diag_element(ctx, (1 + uint64_t(ctx.pow(m))) % ctx.modulus));
  if (ctx.p == 2 && m == 1) out.push_back(diag_element(ctx, ctx.modulus - 1));
}

std::vector<GroupElement> g_level_generators(const LevelContext& ctx, uint32_t k) {
  std::vector<GroupElement> out;
  uint32_t q = ctx.pow(k);
  out.push_back(upper_unipotent(ctx, q));
  out.push_back(lower_unipotent(ctx, q));
  append_diag_generators(out, ctx, k);
  return out;
}

}  // namespace

GroupElement nj_element(const LevelContext& ctx, uint32_t j) {
  if (j < 1) throw ParamError("nj_element: j >= 1 required");
  return upper_unipotent(ctx, ctx.pow(j - 1));
}

GroupElement nj_bar_element(const LevelContext& ctx, uint32_t j) {
  if (j < 1) throw ParamError("nj_bar_element: j >= 1 required");
  return lower_unipotent(ctx, ctx.pow(j - 1));
}

std::vector<GroupElement> subgroup_generators(const SubgroupSpec& spec, const LevelContext& ctx) {
  spec.validate(ctx);
  std::vector<GroupElement> out;
  switch (spec.family) {
    case Family::G:
      return g_level_generators(ctx, spec.k);
    case Family::H:
      // c = 0 mod p^k; a and b only constrained by membership in G.
      out.push_back(upper_unipotent(ctx, ctx.p));
      out.push_back(lower_unipotent(ctx, ctx.pow(spec.k)));
      append_diag_generators(out, ctx, 1);
      return out;
    case Family::T:
      out.push_back(upper_unipotent(ctx, ctx.pow(spec.k)));
      out.push_back(lower_unipotent(ctx, ctx.pow(spec.k)));
      append_diag_generators(out, ctx, 1);
      return out;
    case Family::TLJ: {
      append_diag_generators(out, ctx, spec.l - spec.j);
      auto gl = g_level_generators(ctx, spec.l);
      out.insert(out.end(), gl.begin(), gl.end());
      return out;
    }
    case Family::TLJ_PRIME:
    case Family::TLJ_DPRIME: {
      auto base = subgroup_generators(SubgroupSpec::Tlj(spec.l, spec.j), ctx);
      GroupElement n = spec.family == Family::TLJ_PRIME ? nj_element(ctx, spec.j)
                                                        : nj_bar_element(ctx, spec.j);
      for (auto& g : base) out.push_back(conjugate(n, g));
      return out;
    }
  }
  throw ParamError("subgroup_generators: unknown family");
}

std::vector<uint64_t> canonical_subgroup_set(const SubgroupSpec& spec, const LevelGroup& lg) {
  const LevelContext& ctx = lg.ctx();
  spec.validate(ctx);
  if (lg.base_level() != 1) throw ParamError("canonical_subgroup_set: ambient base level must be 1");
  uint32_t u = lg.unit_count();  // p^(N-1)
  std::vector<uint64_t> out;

  auto emit_box = [&](uint32_t astep, uint32_t bstep, uint32_t cstep) {
    // Indices (ia, ib, ic) running over multiples of the given steps.
    for (uint64_t ia = 0; ia < u; ia += astep)
      for (uint64_t ib = 0; ib < u; ib += bstep)
        for (uint64_t ic = 0; ic < u; ic += cstep)
          out.push_back((ia * u + ib) * u + ic);
  };

  uint32_t p = ctx.p;
  switch (spec.family) {
    case Family::G: {
      uint32_t s = uint32_t(ipow(p, spec.k - 1));
      emit_box(s, s, s);
      break;
    }
    case Family::H: {
      uint32_t s = uint32_t(ipow(p, spec.k - 1));
      emit_box(1, 1, s);
      break;
    }
    case Family::T: {
      uint32_t s = uint32_t(ipow(p, spec.k - 1));
      emit_box(1, s, s);
      break;
    }
    case Family::TLJ:
    case Family::TLJ_PRIME:
    case Family::TLJ_DPRIME: {
      uint32_t l = spec.l, j = spec.j;
      auto gl = canonical_subgroup_set(SubgroupSpec::Gk(l), lg);
      std::set<uint64_t> acc;
      uint32_t astep = uint32_t(ipow(p, l - j - 1));
      for (uint64_t ia = 0; ia < u; ia += astep) {
        GroupElement d = diag_element(ctx, uint32_t((1 + uint64_t(ctx.p) * ia) % ctx.modulus));
        for (uint64_t gi : gl) acc.insert(lg.encode(multiply(d, lg.decode(gi))));
      }
      if (spec.family == Family::TLJ) {
        out.assign(acc.begin(), acc.end());
      } else {
        GroupElement n = spec.family == Family::TLJ_PRIME ? nj_element(ctx, j)
                                                          : nj_bar_element(ctx, j);
        for (uint64_t gi : acc) out.push_back(lg.encode(conjugate(n, lg.decode(gi))));
        std::sort(out.begin(), out.end());
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> closure(const LevelGroup& lg, const std::vector<uint64_t>& gen_idx,
                              uint64_t cap) {
  std::vector<uint8_t> seen(lg.size(), 0);
  std::deque<uint64_t> work;
  std::vector<uint64_t> out;
  uint64_t id = lg.identity_index();
  seen[id] = 1;
  work.push_back(id);
  out.push_back(id);
  while (!work.empty()) {
    uint64_t x = work.front();
    work.pop_front();
    for (uint64_t g : gen_idx) {
      uint64_t y = lg.mul(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        if (out.size() > cap)
          throw ResourceError("closure: enumeration cap " + std::to_string(cap) +
                              " exceeded; a cap of at least the subgroup order is required");
        work.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupRealization realize(const SubgroupSpec& spec, const LevelGroup& lg, uint64_t cap) {
  SubgroupRealization r;
  r.generators = subgroup_generators(spec, lg.ctx());
  auto target = canonical_subgroup_set(spec, lg);
  if (target.size() > cap)
    throw ResourceError("realize: subgroup order " + std::to_string(target.size()) +
                        " exceeds enumeration cap " + std::to_string(cap));
  std::vector<uint64_t> gi;
  for (auto& g : r.generators) gi.push_back(lg.encode(g));
  auto cl = closure(lg, gi, cap);
  // Certify the recipe a posteriori; augment deterministically if it
  // undershoots the defining set.
  while (cl.size() < target.size()) {
    r.recipe_complete = false;
    uint64_t missing = 0;
    bool found = false;
    for (uint64_t e : target) {
      if (!std::binary_search(cl.begin(), cl.end(), e)) {
        missing = e;
        found = true;
        break;
      }
    }
    if (!found) break;
    gi.push_back(missing);
    r.generators.push_back(lg.decode(missing));
    cl = closure(lg, gi, cap);
  }
  if (cl != target)
    throw StructuralError("realize: generator closure does not match the defining set for " +
                          spec.name(lg.ctx().p));
  r.elements = std::move(cl);
  r.order = r.elements->size();
  return r;
}

SubgroupRealization enumerate_subgroup(const LevelGroup& lg,
                                       const std::vector<GroupElement>& generators, uint64_t cap) {
  SubgroupRealization r;
  r.generators = generators;
  std::vector<uint64_t> gi;
  for (auto& g : generators) gi.push_back(lg.encode(g));
  r.elements = closure(lg, gi, cap);
  r.order = r.elements->size();
  return r;
}

uint64_t subgroup_index(const LevelGroup& lg, const SubgroupRealization& inner,
                        const SubgroupRealization& outer) {
  if (!inner.elements || !outer.elements)
    throw ParamError("subgroup_index: both subgroups must be enumerated");
  for (const auto& g : inner.generators)
    if (!outer.contains(lg, g))
      throw ContainmentError("subgroup_index: inner subgroup is not contained in outer");
  if (outer.order % inner.order != 0)
    throw ContainmentError("subgroup_index: orders are incompatible");
  return outer.order / inner.order;
}

bool subgroups_equal(const LevelGroup& lg, const SubgroupRealization& a,
                     const SubgroupRealization& b) {
  if (a.order != b.order) return false;
  for (const auto& g : a.generators)
    if (!b.contains(lg, g)) return false;
  for (const auto& g : b.generators)
    if (!a.contains(lg, g)) return false;
  return true;
}

SubgroupRealization conjugate_subgroup(const LevelGroup& lg, const GroupElement& g,
                                       const SubgroupRealization& sub, uint64_t cap) {
  SubgroupRealization r;
  for (const auto& h : sub.generators) r.generators.push_back(conjugate(g, h));
  if (sub.elements) {
    std::vector<uint64_t> els;
    els.reserve(sub.elements->size());
    for (uint64_t e : *sub.elements) els.push_back(lg.encode(conjugate(g, lg.decode(e))));
    std::sort(els.begin(), els.end());
    r.elements = std::move(els);
    r.order = r.elements->size();
  } else {
    r = enumerate_subgroup(lg, r.generators, cap);
  }
  return r;
}

namespace {

// Left-multiplication orbit ids over the whole level group: the orbit of q
// under <gens> is the right coset <gens> q.
std::vector<uint32_t> left_orbit_ids(const LevelGroup& lg, const std::vector<GroupElement>& gens,
                                     uint32_t& norbits) {
  std::vector<uint64_t> gi;
  for (const auto& g : gens) gi.push_back(lg.encode(g));
  std::vector<uint32_t> orbit(lg.size(), UINT32_MAX);
  std::deque<uint64_t> work;
  norbits = 0;
  for (uint64_t s = 0; s < lg.size(); ++s) {
    if (orbit[s] != UINT32_MAX) continue;
    uint32_t id = norbits++;
    orbit[s] = id;
    work.push_back(s);
    while (!work.empty()) {
      uint64_t x = work.front();
      work.pop_front();
      for (uint64_t g : gi) {
        uint64_t y = lg.mul(g, x);
        if (orbit[y] == UINT32_MAX) {
          orbit[y] = id;
          work.push_back(y);
        }
      }
    }
  }
  return orbit;
}

}  // namespace

ProductIdentityReport product_identity_report(uint32_t l, uint32_t j, const LevelGroup& lg,
                                              uint64_t cap) {
  const LevelContext& ctx = lg.ctx();
  if (j < 2 || j > l - 1) throw ParamError("product identity: need 2 <= j <= l-1");
  if (l > ctx.N - 1) throw ParamError("product identity: need l <= N-1 for a faithful check");

  ProductIdentityReport rep;
  rep.min_faithful_N = l + 1;
  auto t0 = realize(SubgroupSpec::Tlj(l, j), lg, cap);
  auto t1 = realize(SubgroupSpec::TljPrime(l, j), lg, cap);
  auto t2 = realize(SubgroupSpec::TljDoublePrime(l, j), lg, cap);
  auto target = realize(SubgroupSpec::Tlj(l - 1, j - 1), lg, cap);
  rep.expected_order = target.order;

  std::vector<uint64_t> gens;
  for (auto* s : {&t0, &t1, &t2})
    for (auto& g : s->generators) gens.push_back(lg.encode(g));
  auto gen_cl = closure(lg, gens, cap);
  rep.generated_order = gen_cl.size();
  rep.generated_equal = gen_cl == *target.elements;

  // Independent size count for the literal product set, via coset orbits:
  // T' T'' is the union of the left-T' orbits meeting T'', and T (T' T'')
  // the union of the left-T orbits meeting that set.  The product is
  // contained in the generated subgroup, so set equality is equivalent to
  // generated equality plus a size match.
  uint32_t n1 = 0, n0 = 0;
  auto orb1 = left_orbit_ids(lg, t1.generators, n1);
  std::vector<uint8_t> hit1(n1, 0);
  for (uint64_t z : *t2.elements) hit1[orb1[z]] = 1;
  auto orb0 = left_orbit_ids(lg, t0.generators, n0);
  std::vector<uint8_t> hit0(n0, 0);
  for (uint64_t q = 0; q < lg.size(); ++q)
    if (hit1[orb1[q]]) hit0[orb0[q]] = 1;
  uint64_t marked = 0;
  for (uint8_t h : hit0) marked += h;
  uint64_t product_size = marked * t0.order;
  rep.set_product_equal = rep.generated_equal && product_size == target.order;
  return rep;
}

bool verify_product_identity(uint32_t l, uint32_t j, const LevelGroup& lg, uint64_t cap) {
  auto rep = product_identity_report(l, j, lg, cap);
  return rep.generated_equal && rep.set_product_equal;
}

IntersectionIdentityReport intersection_identity_report(uint32_t l, uint32_t j,
                                                        const LevelGroup& lg, uint64_t cap) {
  const LevelContext& ctx = lg.ctx();
  if (j < 2 || j > l - 1) throw ParamError("intersection identity: need 2 <= j <= l-1");
  if (l > ctx.N - 1) throw ParamError("intersection identity: need l <= N-1");

  IntersectionIdentityReport rep;
  SubgroupRealization t[3] = {realize(SubgroupSpec::Tlj(l, j), lg, cap),
                              realize(SubgroupSpec::TljPrime(l, j), lg, cap),
                              realize(SubgroupSpec::TljDoublePrime(l, j), lg, cap)};
  auto base_target = realize(SubgroupSpec::Tlj(l, j - 1), lg, cap);
  rep.expected_order = base_target.order;

  // Rotation r: t[r] intersect <other two> compared against the matching
  // conjugate of T(l, j-1) (plain, N_j-conjugate, N_j-bar-conjugate).
  std::vector<std::vector<uint64_t>> targets(3);
  targets[0] = *base_target.elements;
  targets[1] = *conjugate_subgroup(lg, nj_element(ctx, j), base_target, cap).elements;
  targets[2] = *conjugate_subgroup(lg, nj_bar_element(ctx, j), base_target, cap).elements;

  for (int r = 0; r < 3; ++r) {
    std::vector<uint64_t> gens;
    for (int s = 0; s < 3; ++s) {
      if (s == r) continue;
      for (auto& g : t[s].generators) gens.push_back(lg.encode(g));
    }
    auto span = closure(lg, gens, cap);
    std::vector<uint64_t> inter;
    std::set_intersection(t[r].elements->begin(), t[r].elements->end(), span.begin(), span.end(),
                          std::back_inserter(inter));
    rep.intersection_order[r] = inter.size();
    rep.rotation_ok[r] = inter == targets[r];
  }
  return rep;
}

bool verify_intersection_identity(uint32_t l, uint32_t j, const LevelGroup& lg, uint64_t cap) {
  return intersection_identity_report(l, j, lg, cap).all_ok();
}

ConjugationReport conjugate_H_to_T(uint32_t k, const LevelContext& ctx, uint64_t cap) {
  if (k % 2 == 0) throw ParamError("conjugate_H_to_T: k must be odd");
  ctx.require_level(k);
  uint32_t s = (k - 1) / 2;
  ConjugationReport rep;
  rep.result_level = ctx.N - s;
  rep.target_k = (k + 1) / 2;
  if (rep.result_level < 1) throw ParamError("conjugate_H_to_T: level loss exhausts N");

  LevelGroup lg(ctx, 1);
  auto h = realize(SubgroupSpec::Hk(k), lg, cap);

  LevelContext low(ctx.p, rep.result_level);
  uint32_t ps = ctx.pow(s);
  std::vector<GroupElement> conj;
  for (const auto& g : h.generators) {
    if (g.c % ps != 0)
      throw StructuralError("conjugate_H_to_T: c entry not divisible by p^s");
    // diag(p^s, 1) conjugation: b -> b * p^s, c -> c / p^s, at level N - s.
    uint32_t b2 = uint32_t((uint64_t(g.b) * ps) % low.modulus);
    uint32_t c2 = (g.c / ps) % low.modulus;
    conj.push_back(GroupElement(low, g.a % low.modulus, b2, c2, g.d % low.modulus));
  }

  LevelGroup lg_low(low, 1);
  auto generated = enumerate_subgroup(lg_low, conj, cap);
  auto target = realize(SubgroupSpec::Tk(rep.target_k), lg_low, cap);
  rep.conjugate_order = generated.order;
  rep.target_order = target.order;
  rep.ok = subgroups_equal(lg_low, generated, target);
  return rep;
}

}  // namespace sl2lab
