#include "sl2lab/coinvariants.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sl2lab/coset_module.hpp"

namespace sl2lab {

SparseElt sparse_normalize(uint32_t p, SparseElt v) {
  std::sort(v.begin(), v.end());
  SparseElt out;
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = uint8_t((out.back().second + c) % p);
    } else {
      out.emplace_back(i, uint8_t(c % p));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
            out.end());
  return out;
}

SparseElt sparse_z_mult(const Carrier& car, uint32_t p, uint64_t g, const SparseElt& v) {
  SparseElt out = v;
  for (auto& [i, c] : v) out.emplace_back(car.mul(g, i), uint8_t((p - c) % p));
  return sparse_normalize(p, std::move(out));
}

uint8_t sparse_augmentation(uint32_t p, const SparseElt& v) {
  uint32_t s = 0;
  for (auto& [i, c] : v) s += c;
  return uint8_t(s % p);
}

SparseElt random_cyclic_relator(const Carrier& car, uint32_t p,
                                const std::vector<uint64_t>& z_gen_elts, Rng& rng,
                                uint32_t max_terms, uint32_t max_degree) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SparseElt acc;
    uint32_t terms = 2 + uint32_t(rng.below(max_terms - 1));
    for (uint32_t t = 0; t < terms; ++t) {
      SparseElt mono{{car.identity_index(), uint8_t(1 + rng.below(p - 1))}};
      uint32_t deg = 1 + uint32_t(rng.below(max_degree));
      for (uint32_t d = 0; d < deg; ++d) {
        uint64_t z = z_gen_elts[rng.below(z_gen_elts.size())];
        mono = sparse_z_mult(car, p, z, mono);
      }
      acc.insert(acc.end(), mono.begin(), mono.end());
    }
    acc = sparse_normalize(p, std::move(acc));
    if (!acc.empty()) return acc;
  }
  throw StructuralError("random_cyclic_relator: failed to draw a nonzero relator");
}

GModule trivial_module(const Carrier& car, uint32_t p, const std::vector<uint64_t>& gen_elts) {
  (void)car;
  GModule m;
  m.p = p;
  m.dim = 1;
  m.gen_elts = gen_elts;
  for (size_t i = 0; i < gen_elts.size(); ++i) m.gen_mats.push_back(FpMat::identity(p, 1));
  m.provenance = "trivial";
  m.full_action = [p](uint64_t) { return FpMat::identity(p, 1); };
  return m;
}

GModule regular_module(const Carrier& car, uint32_t p, const std::vector<uint64_t>& gen_elts) {
  GModule m;
  m.p = p;
  m.dim = uint32_t(car.size());
  m.gen_elts = gen_elts;
  m.provenance = "regular";
  const Carrier* cp = &car;
  m.full_action = [cp, p](uint64_t g) {
    uint32_t n = uint32_t(cp->size());
    FpMat mat(p, n, n);
    for (uint64_t h = 0; h < n; ++h) mat.at(uint32_t(cp->mul(g, h)), uint32_t(h)) = 1;
    return mat;
  };
  for (uint64_t g : gen_elts) m.gen_mats.push_back(m.full_action(g));
  return m;
}

GModule quotient_module_explicit(const Carrier& car, uint32_t p,
                                 const std::vector<FpVec>& relation_rows,
                                 const std::vector<uint64_t>& gen_elts) {
  uint32_t n = uint32_t(car.size());
  RowReducer red(p, n);
  for (const auto& row : relation_rows) red.add(row);
  auto rref = red.canonical();
  const auto& roc = red.pivot_of_col();

  auto free_cols = std::make_shared<std::vector<uint32_t>>();
  std::vector<int32_t> pos_of_col(n, -1);
  for (uint32_t c = 0; c < n; ++c)
    if (roc[c] < 0) {
      pos_of_col[c] = int32_t(free_cols->size());
      free_cols->push_back(c);
    }
  uint32_t dim = uint32_t(free_cols->size());

  // expansion[c] = coordinates of e_c in the quotient basis.
  auto expansion = std::make_shared<std::vector<FpVec>>(n);
  std::vector<uint32_t> pivs;
  for (uint32_t c = 0; c < n; ++c)
    if (roc[c] >= 0) pivs.push_back(c);
  for (uint32_t c = 0; c < n; ++c) {
    FpVec e(dim, 0);
    if (pos_of_col[c] >= 0) {
      e[pos_of_col[c]] = 1;
    } else {
      // e_c == -(tail of its canonical row on the free columns).
      uint32_t r = uint32_t(std::lower_bound(pivs.begin(), pivs.end(), c) - pivs.begin());
      for (uint32_t i = 0; i < dim; ++i) {
        uint8_t v = rref[r][(*free_cols)[i]];
        if (v) e[i] = uint8_t(p - v);
      }
    }
    (*expansion)[c] = std::move(e);
  }

  GModule m;
  m.p = p;
  m.dim = dim;
  m.gen_elts = gen_elts;
  m.provenance = "cyclic-quotient";
  const Carrier* cp = &car;
  m.full_action = [cp, p, dim, free_cols, expansion](uint64_t g) {
    FpMat mat(p, dim, dim);
    for (uint32_t j = 0; j < dim; ++j) {
      uint64_t gh = cp->mul(g, (*free_cols)[j]);
      const FpVec& e = (*expansion)[gh];
      for (uint32_t i = 0; i < dim; ++i) mat.at(i, j) = e[i];
    }
    return mat;
  };
  for (uint64_t g : gen_elts) m.gen_mats.push_back(m.full_action(g));
  return m;
}

GModule cyclic_module_explicit(const Carrier& car, uint32_t p, const SparseElt& x,
                               const std::vector<uint64_t>& gen_elts) {
  uint32_t n = uint32_t(car.size());
  std::vector<FpVec> rows;
  rows.reserve(n);
  for (uint64_t g = 0; g < n; ++g) {
    FpVec row(n, 0);
    for (auto& [u, c] : x) {
      uint64_t gu = car.mul(g, u);
      row[gu] = uint8_t((row[gu] + c) % p);
    }
    rows.push_back(std::move(row));
  }
  return quotient_module_explicit(car, p, rows, gen_elts);
}

GModule coset_gmodule(const Carrier& car, uint32_t k, const std::vector<uint64_t>& gen_elts) {
  if (car.copies() != 1 || car.base().base_level() != 1)
    throw ParamError("coset_gmodule: t = 1 ambient carrier required");
  GModule m;
  m.p = car.base().ctx().p;
  m.dim = uint32_t(ipow(m.p, k - 1));
  m.gen_elts = gen_elts;
  m.provenance = "coset";
  const LevelGroup* lg = &car.base();
  m.full_action = [lg, k](uint64_t g) { return action_matrix(lg->decode(g), k); };
  for (uint64_t g : gen_elts) m.gen_mats.push_back(m.full_action(g));
  return m;
}

GModule tensor_module(const GModule& a, const GModule& b) {
  if (a.p != b.p) throw ParamError("tensor_module: field mismatch");
  if (a.gen_elts != b.gen_elts)
    throw ParamError("tensor_module: factors must share acting generators");
  GModule m;
  m.p = a.p;
  m.dim = a.dim * b.dim;
  m.gen_elts = a.gen_elts;
  m.provenance = "tensor(" + a.provenance + "," + b.provenance + ")";
  auto fa = a.full_action, fb = b.full_action;
  m.full_action = [fa, fb](uint64_t g) { return kronecker(fa(g), fb(g)); };
  for (size_t i = 0; i < a.gen_mats.size(); ++i)
    m.gen_mats.push_back(kronecker(a.gen_mats[i], b.gen_mats[i]));
  return m;
}

bool validate_gmodule(const Carrier& car, const GModule& m, Rng& rng, uint32_t words) {
  for (const auto& mat : m.gen_mats)
    if (!is_invertible(mat)) return false;
  for (size_t i = 0; i < m.gen_elts.size(); ++i) {
    uint64_t ord = car.element_order(m.gen_elts[i]);
    if (!(m.gen_mats[i].pow(ord) == FpMat::identity(m.p, m.dim))) return false;
  }
  if (m.full_action) {
    for (uint32_t w = 0; w < words; ++w) {
      uint32_t len = 2 + uint32_t(rng.below(3));
      uint64_t elt = car.identity_index();
      FpMat mat = FpMat::identity(m.p, m.dim);
      for (uint32_t s = 0; s < len; ++s) {
        size_t i = rng.below(m.gen_elts.size());
        elt = car.mul(elt, m.gen_elts[i]);
        mat = mat * m.gen_mats[i];
      }
      if (!(mat == m.full_action(elt))) return false;
    }
  }
  return true;
}

CoinvariantResult coinvariants(const GModule& m, const std::vector<FpMat>& subgroup_action,
                               bool want_projection) {
  RowReducer red(m.p, m.dim);
  for (const auto& mat : subgroup_action) {
    if (mat.rows != m.dim || mat.cols != m.dim || mat.p != m.p)
      throw ContextError("coinvariants: action matrix does not match the module's level");
    for (uint32_t j = 0; j < m.dim; ++j) {
      FpVec v(m.dim, 0);
      for (uint32_t i = 0; i < m.dim; ++i) v[i] = mat.at(i, j);
      v[j] = uint8_t((v[j] + m.p - 1) % m.p);
      red.add(v);
    }
    if (red.full()) break;
  }
  CoinvariantResult res;
  res.dim = m.dim - red.rank();
  if (want_projection) {
    const auto& roc = red.pivot_of_col();
    std::vector<uint32_t> free_cols;
    for (uint32_t c = 0; c < m.dim; ++c)
      if (roc[c] < 0) free_cols.push_back(c);
    res.projection = FpMat(m.p, uint32_t(res.dim), m.dim);
    for (uint32_t j = 0; j < m.dim; ++j) {
      FpVec e(m.dim, 0);
      e[j] = 1;
      FpVec r = red.reduce(e);
      for (uint32_t i = 0; i < res.dim; ++i) res.projection.at(i, j) = r[free_cols[i]];
    }
  }
  return res;
}

OrbitPartition left_orbits(const Carrier& car, const std::vector<uint64_t>& gens) {
  OrbitPartition part;
  uint64_t n = car.size();
  part.orbit_of.assign(n, UINT32_MAX);
  std::deque<uint64_t> work;
  for (uint64_t s = 0; s < n; ++s) {
    if (part.orbit_of[s] != UINT32_MAX) continue;
    uint32_t id = part.norbits++;
    part.reps.push_back(s);
    part.orbit_of[s] = id;
    work.push_back(s);
    while (!work.empty()) {
      uint64_t x = work.front();
      work.pop_front();
      for (uint64_t g : gens) {
        uint64_t y = car.mul(g, x);
        if (part.orbit_of[y] == UINT32_MAX) {
          part.orbit_of[y] = id;
          work.push_back(y);
        }
      }
    }
  }
  return part;
}

CoinvLab::CoinvLab(uint32_t p, uint32_t N, uint32_t t, uint64_t enum_cap, uint32_t dim_cap)
    : ctx_(p, N), t_(t), enum_cap_(enum_cap), dim_cap_(dim_cap) {
  lg_ = std::make_unique<LevelGroup>(ctx_, 1);
  car_ = std::make_unique<Carrier>(*lg_, t_);
  // Topological generators per copy (z-monomial alphabet).
  std::vector<GroupElement> base = {
      GroupElement(ctx_, 1, ctx_.p, 0, 1), GroupElement(ctx_, 1, 0, ctx_.p, 1),
      GroupElement(ctx_, 1 + ctx_.p, 0, 0, inv_mod(1 + ctx_.p, ctx_.modulus))};
  for (uint32_t slot = 0; slot < t_; ++slot)
    for (const auto& g : base) zgen_.push_back(car_->embed(lg_->encode(g), slot));
}

CoinvLab::Sub CoinvLab::build_sub(const std::string& name, std::vector<uint64_t> gens) const {
  Sub s;
  s.name = name;
  s.gens = std::move(gens);
  s.orbits = left_orbits(*car_, s.gens);
  s.order = car_->size() / s.orbits.norbits;
  return s;
}

const CoinvLab::Sub& CoinvLab::subgroup(const SubgroupSpec& spec) {
  if (t_ != 1) throw ParamError("CoinvLab::subgroup: t = 1 only; use product_subgroup");
  return product_subgroup({spec});
}

const CoinvLab::Sub& CoinvLab::product_subgroup(const std::vector<SubgroupSpec>& specs) {
  if (specs.size() != t_) throw ParamError("product_subgroup: one spec per copy required");
  std::string name;
  for (const auto& s : specs) name += (name.empty() ? "" : "x") + s.name(ctx_.p);
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  std::vector<uint64_t> gens;
  for (uint32_t slot = 0; slot < t_; ++slot) {
    auto r = realize(specs[slot], *lg_, enum_cap_);
    for (const auto& g : r.generators) gens.push_back(car_->embed(lg_->encode(g), slot));
  }
  auto [pos, inserted] = cache_.emplace(name, build_sub(name, std::move(gens)));
  return pos->second;
}

CoinvLab::Sub CoinvLab::subgroup_from_generators(const std::string& name,
                                                 std::vector<uint64_t> gens) const {
  return build_sub(name, std::move(gens));
}

CoinvLab::Sub CoinvLab::conjugated(const Sub& s, uint64_t g) const {
  std::vector<uint64_t> gens;
  uint64_t gi = car_->inv(g);
  for (uint64_t h : s.gens) gens.push_back(car_->mul(car_->mul(g, h), gi));
  return build_sub(s.name + "^conj", std::move(gens));
}

std::vector<uint64_t> CoinvLab::element_set(const Sub& s) const {
  // Closure inside the carrier.
  std::vector<uint8_t> seen(car_->size(), 0);
  std::deque<uint64_t> work;
  std::vector<uint64_t> out;
  uint64_t id = car_->identity_index();
  seen[id] = 1;
  out.push_back(id);
  work.push_back(id);
  while (!work.empty()) {
    uint64_t x = work.front();
    work.pop_front();
    for (uint64_t g : s.gens) {
      uint64_t y = car_->mul(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        if (out.size() > enum_cap_) throw ResourceError("element_set: enumeration cap exceeded");
        work.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoinvLab::Sub CoinvLab::meet(const Sub& a, const Sub& b) const {
  auto ea = element_set(a), eb = element_set(b);
  std::vector<uint64_t> inter;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(inter));
  return build_sub("(" + a.name + " meet " + b.name + ")", std::move(inter));
}

CoinvLab::Sub CoinvLab::join(const Sub& a, const Sub& b) const {
  std::vector<uint64_t> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return build_sub("<" + a.name + ", " + b.name + ">", std::move(gens));
}

uint64_t CoinvLab::coinv_dim(const TestModule& m, const Sub& T) const {
  switch (m.kind) {
    case TestModule::Kind::Trivial:
      return 1;
    case TestModule::Kind::Regular:
      return T.orbits.norbits;
    case TestModule::Kind::Cyclic: {
      uint32_t d = T.orbits.norbits;
      if (d > dim_cap_)
        throw ResourceError("coinv_dim: coset space dimension " + std::to_string(d) +
                            " exceeds dim cap " + std::to_string(dim_cap_));
      // M_T = F_p[T\Q] / pi(A x): candidates pi(g x) over coset reps.
      RowReducer red(ctx_.p, d);
      for (uint64_t rep : T.orbits.reps) {
        FpVec cand(d, 0);
        for (auto& [u, c] : m.x) {
          uint32_t o = T.orbits.orbit_of[car_->mul(rep, u)];
          cand[o] = uint8_t((cand[o] + c) % ctx_.p);
        }
        red.add(cand);
        if (red.full()) break;
      }
      return d - red.rank();
    }
  }
  throw ParamError("coinv_dim: unknown module kind");
}

uint64_t CoinvLab::module_dim(const TestModule& m) const {
  switch (m.kind) {
    case TestModule::Kind::Trivial:
      return 1;
    case TestModule::Kind::Regular:
      return car_->size();
    case TestModule::Kind::Cyclic: {
      if (car_->size() > dim_cap_)
        throw ResourceError("module_dim: carrier exceeds dim cap");
      RowReducer red(ctx_.p, uint32_t(car_->size()));
      for (uint64_t g = 0; g < car_->size(); ++g) {
        FpVec row(car_->size(), 0);
        for (auto& [u, c] : m.x) {
          uint64_t gu = car_->mul(g, u);
          row[gu] = uint8_t((row[gu] + c) % ctx_.p);
        }
        red.add(row);
      }
      return car_->size() - red.rank();
    }
  }
  throw ParamError("module_dim: unknown module kind");
}

GModule CoinvLab::explicit_module(const TestModule& m) const {
  switch (m.kind) {
    case TestModule::Kind::Trivial:
      return trivial_module(*car_, ctx_.p, zgen_);
    case TestModule::Kind::Regular:
      return regular_module(*car_, ctx_.p, zgen_);
    case TestModule::Kind::Cyclic:
      if (car_->size() > dim_cap_)
        throw ResourceError("explicit_module: carrier exceeds dim cap");
      return cyclic_module_explicit(*car_, ctx_.p, m.x, zgen_);
  }
  throw ParamError("explicit_module: unknown module kind");
}

TestModule CoinvLab::random_cyclic(uint64_t seed) const {
  Rng local(0x5eedULL * 0x9e3779b97f4a7c15ULL ^ seed);
  return TestModule::cyclic(random_cyclic_relator(*car_, ctx_.p, zgen_, local), seed);
}

uint64_t CoinvLab::random_element(Rng& rng) const { return rng.below(car_->size()); }

InclExclReport inclusion_exclusion_check(CoinvLab& lab, const TestModule& m, const CoinvLab::Sub& A,
                                         const CoinvLab::Sub& B) {
  InclExclReport rep;
  rep.dim_a = lab.coinv_dim(m, A);
  rep.dim_b = lab.coinv_dim(m, B);
  rep.dim_meet = lab.coinv_dim(m, lab.meet(A, B));
  rep.dim_join = lab.coinv_dim(m, lab.join(A, B));
  rep.holds = rep.dim_a + rep.dim_b <= rep.dim_meet + rep.dim_join;
  return rep;
}

bool conjugation_invariance_check(CoinvLab& lab, const TestModule& m, const CoinvLab::Sub& S,
                                  uint64_t g) {
  return lab.coinv_dim(m, S) == lab.coinv_dim(m, lab.conjugated(S, g));
}

bool conjugation_witness_check(const Carrier& car, const GModule& M, const CoinvLab::Sub& S,
                               uint64_t g) {
  // rho(g) must carry span{(s-1)m} onto span{(gsg^-1 - 1)m}.
  RowReducer orig(M.p, M.dim), conj(M.p, M.dim);
  uint64_t gi = car.inv(g);
  FpMat rho_g = M.full_action(g);
  std::vector<FpVec> orig_rows;
  for (uint64_t s : S.gens) {
    FpMat ms = M.full_action(s);
    FpMat mc = M.full_action(car.mul(car.mul(g, s), gi));
    for (uint32_t j = 0; j < M.dim; ++j) {
      FpVec v(M.dim, 0), w(M.dim, 0);
      for (uint32_t i = 0; i < M.dim; ++i) {
        v[i] = ms.at(i, j);
        w[i] = mc.at(i, j);
      }
      v[j] = uint8_t((v[j] + M.p - 1) % M.p);
      w[j] = uint8_t((w[j] + M.p - 1) % M.p);
      orig.add(v);
      orig_rows.push_back(std::move(v));
      conj.add(w);
    }
  }
  if (orig.rank() != conj.rank()) return false;
  for (const auto& v : orig_rows)
    if (!conj.contains(rho_g.apply(v))) return false;
  return true;
}

RecursionReport recursion_check(CoinvLab& lab, const TestModule& m, uint32_t l, uint32_t j) {
  if (j < 2) throw ParamError("recursion_check: j >= 2 required");
  if (l + 1 > lab.ctx().N) throw ParamError("recursion_check: need l <= N-1 for faithfulness");
  RecursionReport rep;
  rep.dim_lj = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Tlj(l, j)));
  rep.dim_lj1 = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Tlj(l, j - 1)));
  rep.dim_l1j1 = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Tlj(l - 1, j - 1)));
  rep.holds = 3 * rep.dim_lj <= 2 * rep.dim_lj1 + rep.dim_l1j1;
  return rep;
}

namespace {

// Exact comparison dim_t * p^(2 l*) * (3 p^2)^e3 <= dim_g * (2p^2+1)^e * p^4 * ...
// assembled case by case with 128-bit intermediates.
bool bound_holds_exact(uint64_t dim_t, uint64_t dim_g, uint32_t p, uint32_t lstar, uint32_t expo,
                       bool strict_eta, uint32_t two_l_power) {
  // dim_t <= (dim_g / p^(2 lstar)) * eta^expo * p^(two_l_power)
  // eta = (2p^2+1)/p^2 (spec) or (2p^2+1)/(3p^2) (strict).
  __int128 lhs = __int128(dim_t);
  __int128 rhs = dim_g;
  for (uint32_t i = 0; i < expo; ++i) rhs *= 2 * uint64_t(p) * p + 1;
  for (uint32_t i = 0; i < 2 * lstar; ++i) lhs *= p;
  for (uint32_t i = 0; i < 2 * expo; ++i) lhs *= p;
  for (uint32_t i = 0; i < two_l_power; ++i) rhs *= p;
  if (strict_eta)
    for (uint32_t i = 0; i < expo; ++i) lhs *= 3;
  return lhs <= rhs;
}

double bound_ratio(uint64_t dim_t, double c, uint32_t p, int expo, uint32_t two_l_power,
                   bool strict_eta) {
  double eta = (2.0 * p * p + 1) / (p * p) / (strict_eta ? 3.0 : 1.0);
  double bound = c * std::pow(eta, expo) * std::pow(double(p), double(two_l_power));
  return double(dim_t) / bound;
}

}  // namespace

PropSingleReport prop_single_check(CoinvLab& lab, const TestModule& m, uint32_t k) {
  if (k + 1 > lab.ctx().N) throw ParamError("prop_single_check: need k <= N-1");
  if (k < 1) throw ParamError("prop_single_check: k >= 1");
  PropSingleReport rep;
  rep.k = k;
  uint32_t p = lab.p();
  for (uint32_t l = 1; l <= k; ++l)
    rep.dim_g.push_back(lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Gk(l))));
  rep.dim_t = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Tk(k)));

  // Minimal hypothesis constant C = max_l dim_g[l] / p^(2l), exact.
  uint32_t lstar = 1;
  for (uint32_t l = 2; l <= k; ++l) {
    __int128 lhs = __int128(rep.dim_g[l - 1]);
    for (uint32_t i = 0; i < 2 * lstar; ++i) lhs *= p;
    __int128 rhs = __int128(rep.dim_g[lstar - 1]);
    for (uint32_t i = 0; i < 2 * l; ++i) rhs *= p;
    if (lhs > rhs) lstar = l;
  }
  rep.c_witness_l = lstar;
  rep.asserted = k >= 2;
  uint32_t expo = k >= 2 ? k - 2 : 0;
  rep.holds = bound_holds_exact(rep.dim_t, rep.dim_g[lstar - 1], p, lstar, expo, false, 2 * k);
  rep.holds_strict =
      bound_holds_exact(rep.dim_t, rep.dim_g[lstar - 1], p, lstar, expo, true, 2 * k);
  double c = double(rep.dim_g[lstar - 1]) / std::pow(double(p), 2.0 * lstar);
  rep.ratio = bound_ratio(rep.dim_t, c, p, int(k) - 2, 2 * k, false);
  rep.ratio_strict = bound_ratio(rep.dim_t, c, p, int(k) - 2, 2 * k, true);
  return rep;
}

std::vector<IndhypRow> indhyp_sweep(CoinvLab& lab, const TestModule& m, uint32_t lmax) {
  if (lmax + 1 > lab.ctx().N) throw ParamError("indhyp_sweep: need lmax <= N-1");
  uint32_t p = lab.p();
  std::vector<uint64_t> dim_g;
  for (uint32_t l = 1; l <= lmax; ++l)
    dim_g.push_back(lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Gk(l))));
  uint32_t lstar = 1;
  for (uint32_t l = 2; l <= lmax; ++l) {
    __int128 lhs = __int128(dim_g[l - 1]);
    for (uint32_t i = 0; i < 2 * lstar; ++i) lhs *= p;
    __int128 rhs = __int128(dim_g[lstar - 1]);
    for (uint32_t i = 0; i < 2 * l; ++i) rhs *= p;
    if (lhs > rhs) lstar = l;
  }
  double c = double(dim_g[lstar - 1]) / std::pow(double(p), 2.0 * lstar);

  std::vector<IndhypRow> rows;
  for (uint32_t l = 1; l <= lmax; ++l) {
    for (uint32_t j = 0; j + 1 <= l; ++j) {
      IndhypRow row;
      row.l = l;
      row.j = j;
      row.dim = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Tlj(l, j)));
      row.asserted = j >= 1;
      uint32_t expo = j >= 1 ? j - 1 : 0;
      row.holds = bound_holds_exact(row.dim, dim_g[lstar - 1], p, lstar, expo, false, 2 * l);
      row.ratio = bound_ratio(row.dim, c, p, int(j) - 1, 2 * l, false);
      row.ratio_strict = bound_ratio(row.dim, c, p, int(j) - 1, 2 * l, true);
      rows.push_back(row);
    }
  }
  return rows;
}

ProductCaseReport coinvarlem_product_check(CoinvLab& lab, const TestModule& m, uint32_t kmax,
                                           double ratio_cap) {
  uint32_t t = lab.t(), p = lab.p();
  ProductCaseReport rep;
  rep.module_dim = lab.module_dim(m);
  rep.sanity = true;
  rep.monotone = true;
  rep.ratio_bounded = true;

  std::vector<std::vector<uint32_t>> tuples;
  uint64_t total = 1;
  for (uint32_t i = 0; i < t; ++i) total *= kmax;
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<uint32_t> k(t);
    uint64_t c = code;
    for (uint32_t i = 0; i < t; ++i) {
      k[i] = 1 + uint32_t(c % kmax);
      c /= kmax;
    }
    tuples.push_back(std::move(k));
  }

  std::vector<uint64_t> dims;
  for (const auto& k : tuples) {
    std::vector<SubgroupSpec> specs;
    for (uint32_t ki : k) specs.push_back(SubgroupSpec::Tk(ki));
    uint64_t d = lab.coinv_dim(m, lab.product_subgroup(specs));
    dims.push_back(d);
    ProductCaseRow row;
    row.k = k;
    row.dim = d;
    row.index = 1;
    uint32_t kappa = *std::min_element(k.begin(), k.end());
    for (uint32_t ki : k) row.index *= ipow(p, 2 * (ki - 1));
    double eta = (2.0 * p * p + 1) / (p * p);
    row.ratio = double(d) / (std::pow(eta, kappa) * double(row.index));
    row.ratio_strict = double(d) / (std::pow(eta / 3.0, kappa) * double(row.index));
    if (row.ratio >= ratio_cap) rep.ratio_bounded = false;
    rep.rows.push_back(row);
    if (d > rep.module_dim) rep.sanity = false;
  }
  // k <= k' entrywise means TT_k' is the smaller subgroup, so its
  // coinvariant space is the larger quotient.
  for (size_t i = 0; i < tuples.size(); ++i)
    for (size_t j = 0; j < tuples.size(); ++j) {
      bool leq = true;
      for (uint32_t s = 0; s < t; ++s) leq = leq && tuples[i][s] <= tuples[j][s];
      if (leq && dims[i] > dims[j]) rep.monotone = false;
    }
  // Fitted decay exponent along the diagonal.
  {
    std::vector<uint32_t> k1(t, 1), k2(t, kmax);
    uint64_t d1 = 0, d2 = 0;
    for (size_t i = 0; i < tuples.size(); ++i) {
      if (tuples[i] == k1) d1 = dims[i];
      if (tuples[i] == k2) d2 = dims[i];
    }
    if (kmax > 1 && d1 > 0 && d2 > 0)
      rep.fitted_exponent =
          (std::log(double(d2)) - std::log(double(d1))) / ((kmax - 1) * std::log(double(p)));
  }
  return rep;
}

ShapiroReport shapiro_h0_check(CoinvLab& lab, const TestModule& m, uint32_t k) {
  if (lab.t() != 1) throw ParamError("shapiro_h0_check: t = 1 required");
  ShapiroReport rep;
  const auto& full_g = lab.subgroup(SubgroupSpec::Gk(1));
  GModule M = lab.explicit_module(m);
  GModule L = coset_gmodule(lab.carrier(), k, M.gen_elts);
  GModule T = tensor_module(M, L);
  std::vector<FpMat> mats;
  for (uint64_t g : full_g.gens) mats.push_back(T.full_action(g));
  rep.lhs = coinvariants(T, mats).dim;
  rep.rhs = lab.coinv_dim(m, lab.subgroup(SubgroupSpec::Hk(k)));
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

std::vector<HarrisRow> harris_report(CoinvLab& lab, const TestModule& m, uint32_t nmax) {
  std::vector<HarrisRow> rows;
  for (uint32_t n = 1; n <= nmax && n <= lab.ctx().N; ++n) {
    std::vector<SubgroupSpec> specs(lab.t(), SubgroupSpec::Gk(n));
    HarrisRow row;
    row.n = n;
    row.dim = lab.coinv_dim(m, lab.product_subgroup(specs));
    row.log_p_dim = row.dim > 0 ? std::log(double(row.dim)) / std::log(double(lab.p())) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double delta_of_p(uint32_t p) {
  long double pp = p;
  long double val = (std::log(3.0L * pp * pp) - std::log(2.0L * pp * pp + 1.0L)) /
                    (2.0L * std::log(pp));
  return double(val);
}

std::vector<uint32_t> primes_up_to(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t i = 2; i <= n; ++i)
    if (is_prime_u32(i)) out.push_back(i);
  return out;
}

}  // namespace sl2lab
