#include "sl2lab/iwasawa.hpp"

#include <algorithm>

namespace sl2lab {

uint64_t monomial_degree(const MonomialIndex& a) {
  uint64_t s = 0;
  for (uint32_t x : a) s += x;
  return s;
}

bool grlex_less(const MonomialIndex& a, const MonomialIndex& b) {
  uint64_t da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool entrywise_leq(const MonomialIndex& a, const MonomialIndex& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

MonomialIndex add_indices(const MonomialIndex& a, const MonomialIndex& b) {
  MonomialIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

MonomialIndex sub_indices(const MonomialIndex& a, const MonomialIndex& b) {
  MonomialIndex r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) throw ParamError("sub_indices: alpha >= beta entrywise required");
    r[i] = a[i] - b[i];
  }
  return r;
}

TruncatedAlgebra::TruncatedAlgebra(uint32_t p, uint32_t N, uint32_t t, uint32_t base_level)
    : ctx_(p, N), t_(t), base_(base_level) {
  if (base_ >= N) throw ParamError("TruncatedAlgebra: base level must be < N");
  q_ = ctx_.pow(N - base_);
  lg_ = std::make_unique<LevelGroup>(ctx_, base_);
  carrier_ = std::make_unique<Carrier>(*lg_, t_);
  if (carrier_->size() > 4096)
    throw ResourceError("TruncatedAlgebra: dimension " + std::to_string(carrier_->size()) +
                        " exceeds the linear-algebra cap 4096");

  // Topological generators per copy: I + p^k0 E12, I + p^k0 E21,
  // diag(1 + p^k0, .).
  uint32_t s = ctx_.pow(base_);
  std::vector<GroupElement> base_gens = {
      GroupElement(ctx_, 1, s, 0, 1), GroupElement(ctx_, 1, 0, s, 1),
      GroupElement(ctx_, (1 + s) % ctx_.modulus, 0, 0, inv_mod((1 + s) % ctx_.modulus, ctx_.modulus))};
  for (uint32_t slot = 0; slot < t_; ++slot)
    for (const auto& g : base_gens) gen_elt_.push_back(carrier_->embed(lg_->encode(g), slot));

  uint64_t n = carrier_->size();
  permL_.assign(gen_elt_.size(), std::vector<uint32_t>(n));
  permR_.assign(gen_elt_.size(), std::vector<uint32_t>(n));
  for (size_t i = 0; i < gen_elt_.size(); ++i)
    for (uint64_t h = 0; h < n; ++h) {
      permL_[i][h] = uint32_t(carrier_->mul(gen_elt_[i], h));
      permR_[i][h] = uint32_t(carrier_->mul(h, gen_elt_[i]));
    }

  // Basis indices in graded-lex order.
  indices_.reserve(n);
  for (uint64_t code = 0; code < n; ++code) {
    MonomialIndex a(num_generators());
    uint64_t c = code;
    for (size_t i = a.size(); i-- > 0;) {
      a[i] = uint32_t(c % q_);
      c /= q_;
    }
    indices_.push_back(std::move(a));
  }
  std::sort(indices_.begin(), indices_.end(), grlex_less);
}

FpVec TruncatedAlgebra::unit() const {
  FpVec v = zero();
  v[carrier_->identity_index()] = 1;
  return v;
}

FpVec TruncatedAlgebra::mult_group_left(uint64_t g, const FpVec& v) const {
  FpVec out(v.size(), 0);
  for (uint64_t h = 0; h < v.size(); ++h)
    if (v[h]) out[carrier_->mul(g, h)] = v[h];
  return out;
}

FpVec TruncatedAlgebra::mult_group_right(const FpVec& v, uint64_t g) const {
  FpVec out(v.size(), 0);
  for (uint64_t h = 0; h < v.size(); ++h)
    if (v[h]) out[carrier_->mul(h, g)] = v[h];
  return out;
}

FpVec TruncatedAlgebra::mult_z_left(uint32_t i, const FpVec& v) const {
  const auto& perm = permL_[i];
  FpVec out(v);
  uint32_t p = ctx_.p;
  for (uint64_t h = 0; h < v.size(); ++h)
    if (v[h]) {
      uint32_t dst = perm[h];
      out[dst] = uint8_t((out[dst] + p - v[h]) % p);
    }
  return out;
}

FpVec TruncatedAlgebra::mult_z_right(const FpVec& v, uint32_t i) const {
  const auto& perm = permR_[i];
  FpVec out(v);
  uint32_t p = ctx_.p;
  for (uint64_t h = 0; h < v.size(); ++h)
    if (v[h]) {
      uint32_t dst = perm[h];
      out[dst] = uint8_t((out[dst] + p - v[h]) % p);
    }
  return out;
}

FpVec TruncatedAlgebra::mult_monomial_left(const MonomialIndex& delta, const FpVec& v) const {
  if (delta.size() != gen_elt_.size()) throw ParamError("mult_monomial_left: arity mismatch");
  FpVec out(v);
  for (size_t i = delta.size(); i-- > 0;)
    for (uint32_t r = 0; r < delta[i]; ++r) out = mult_z_left(uint32_t(i), out);
  return out;
}

FpVec TruncatedAlgebra::z_generator(uint32_t i) const { return mult_z_left(i, unit()); }

FpVec TruncatedAlgebra::monomial(const MonomialIndex& a) const {
  return mult_monomial_left(a, unit());
}

uint8_t TruncatedAlgebra::augmentation(const FpVec& v) const {
  uint32_t s = 0;
  for (uint8_t x : v) s += x;
  return uint8_t(s % ctx_.p);
}

uint64_t TruncatedAlgebra::index_position(const MonomialIndex& a) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), a, grlex_less);
  if (it == indices_.end() || *it != a)
    throw ParamError("index_position: index outside the basis range");
  return uint64_t(it - indices_.begin());
}

MonomialIndex TruncatedAlgebra::successor(const MonomialIndex& a) const {
  uint64_t pos = index_position(a);
  if (pos + 1 >= indices_.size()) throw ParamError("successor: last index has no successor");
  return indices_[pos + 1];
}

const FpMat& TruncatedAlgebra::monomial_matrix() const {
  if (!monomial_mat_) {
    uint64_t n = dim();
    monomial_mat_ = std::make_unique<FpMat>(ctx_.p, uint32_t(n), uint32_t(n));
    for (uint64_t col = 0; col < n; ++col) {
      FpVec m = monomial(indices_[col]);
      for (uint64_t row = 0; row < n; ++row) monomial_mat_->at(uint32_t(row), uint32_t(col)) = m[row];
    }
  }
  return *monomial_mat_;
}

bool TruncatedAlgebra::monomial_basis_full_rank() const {
  if (basis_rank_ < 0) basis_rank_ = int(rank(monomial_matrix()));
  return uint64_t(basis_rank_) == dim();
}

FpVec TruncatedAlgebra::monomial_coordinates(const FpVec& v) const {
  if (!monomial_basis_full_rank())
    throw StructuralError("monomial_coordinates: monomial family is not a basis here");
  if (!monomial_inv_) monomial_inv_ = std::make_unique<FpMat>(inverse(monomial_matrix()));
  return monomial_inv_->apply(v);
}

bool graded_commutativity_check(const TruncatedAlgebra& A, const MonomialIndex& a,
                                const MonomialIndex& b) {
  // z^a z^b as an element: left-multiply z^b's element by z^a.
  FpVec prod = A.mult_monomial_left(a, A.monomial(b));
  FpVec direct = A.monomial(add_indices(a, b));
  uint32_t p = A.p();
  FpVec diff(prod.size());
  for (size_t i = 0; i < prod.size(); ++i) diff[i] = uint8_t((prod[i] + p - direct[i]) % p);
  FpVec coords = A.monomial_coordinates(diff);
  uint64_t cutoff = monomial_degree(a) + monomial_degree(b);
  const auto& idx = A.index_list();
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] && monomial_degree(idx[i]) <= cutoff) return false;
  return true;
}

IdealAlphaResult ideal_I_alpha(const TruncatedAlgebra& A, const MonomialIndex& alpha,
                               bool check_two_sided) {
  IdealAlphaResult res;
  std::vector<FpVec> rows;
  const auto& idx = A.index_list();
  uint64_t start = A.index_position(alpha);
  for (uint64_t i = start; i < idx.size(); ++i) rows.push_back(A.monomial(idx[i]));
  res.span = FpSubspace::from_vectors(A.p(), uint32_t(A.dim()), rows);
  if (check_two_sided) {
    res.two_sided = true;
    RowReducer red(A.p(), uint32_t(A.dim()));
    for (const auto& r : res.span.basis) red.add(r);
    for (uint64_t i = start; i < idx.size() && res.two_sided; ++i) {
      FpVec m = A.monomial(idx[i]);
      for (uint32_t z = 0; z < A.num_generators(); ++z) {
        if (!red.contains(A.mult_z_left(z, m)) || !red.contains(A.mult_z_right(m, z))) {
          res.two_sided = false;
          break;
        }
      }
    }
  }
  return res;
}

IdealIpResult ideal_Ip(const TruncatedAlgebra& A, uint32_t l) {
  const LevelGroup& lg = A.level_group();
  const Carrier& car = A.carrier();
  uint32_t k0 = A.base_level();
  if (l < k0 || l > A.N()) throw ParamError("ideal_Ip: need k0 <= l <= N");
  IdealIpResult res;

  // Class of each carrier element in GG / GG_l.
  uint32_t pl = uint32_t(ipow(A.p(), l));
  uint64_t n = A.dim();
  std::vector<uint64_t> cls(n);
  uint64_t nclasses = 1;
  {
    // Base-group class: residues of (a, b, c) mod p^l.
    uint32_t step = lg.ctx().pow(k0);
    uint32_t ul = uint32_t(ipow(A.p(), l - k0));
    auto base_class = [&](uint64_t bidx) {
      const GroupElement& g = lg.decode(bidx);
      uint64_t ia = (g.a % pl - 1) / step;
      uint64_t ib = (g.b % pl) / step;
      uint64_t ic = (g.c % pl) / step;
      return (ia * ul + ib) * ul + ic;
    };
    uint64_t base_classes = uint64_t(ul) * ul * ul;
    for (uint64_t i = 0; i < n; ++i) {
      uint64_t acc = 0, scale = 1;
      for (uint32_t s = 0; s < A.t(); ++s) {
        acc += base_class(car.component(i, s)) * scale;
        scale *= base_classes;
      }
      cls[i] = acc;
    }
    for (uint32_t s = 0; s < A.t(); ++s) nclasses *= base_classes;
  }

  // Kernel basis: e_g - e_{rep(class)}.
  std::vector<int64_t> rep(nclasses, -1);
  std::vector<FpVec> kernel_rows;
  uint32_t p = A.p();
  for (uint64_t i = 0; i < n; ++i) {
    if (rep[cls[i]] < 0) {
      rep[cls[i]] = int64_t(i);
    } else {
      FpVec v(n, 0);
      v[i] = 1;
      v[rep[cls[i]]] = uint8_t(p - 1);
      kernel_rows.push_back(std::move(v));
    }
  }
  res.kernel = FpSubspace::from_vectors(p, uint32_t(n), kernel_rows);
  res.codim = n - res.kernel.dim();

  // Monomial description: span of z^a with a not <= (p^(l-k0) - 1, ...).
  uint32_t cap = uint32_t(ipow(p, l - k0));
  std::vector<FpVec> mono_rows;
  for (const auto& a : A.index_list()) {
    bool inside = true;
    for (uint32_t x : a)
      if (x > cap - 1) {
        inside = false;
        break;
      }
    if (!inside) mono_rows.push_back(A.monomial(a));
  }
  res.monomial_span = FpSubspace::from_vectors(p, uint32_t(n), mono_rows);
  res.descriptions_equal = res.kernel == res.monomial_span;
  return res;
}

AlgebraModule AlgebraModule::cyclic(const TruncatedAlgebra& A, const FpVec& x) {
  AlgebraModule m;
  m.A = &A;
  std::vector<FpVec> rows;
  bool nonzero = false;
  for (uint8_t v : x) nonzero = nonzero || v;
  if (nonzero) {
    for (uint64_t g = 0; g < A.dim(); ++g) rows.push_back(A.mult_group_left(g, x));
  }
  m.relations = FpSubspace::from_vectors(A.p(), uint32_t(A.dim()), rows);
  m.dim = A.dim() - m.relations.dim();
  return m;
}

FpSubspace AlgebraModule::filtration_piece(const MonomialIndex& alpha) const {
  // I_alpha M = I_alpha v-bar in ambient coordinates (I_alpha is two sided,
  // so I_alpha A v = I_alpha v), plus the relation space.
  std::vector<FpVec> rows = relations.basis;
  const auto& idx = A->index_list();
  for (uint64_t i = A->index_position(alpha); i < idx.size(); ++i)
    rows.push_back(A->monomial(idx[i]));
  return FpSubspace::from_vectors(A->p(), uint32_t(A->dim()), rows);
}

std::vector<FiltrationStep> module_filtration(const AlgebraModule& M) {
  const auto& idx = M.A->index_list();
  std::vector<FiltrationStep> out;
  uint64_t rel = M.relations.dim();
  // Walk the chain from the top down, accumulating monomial spans.
  RowReducer red(M.A->p(), uint32_t(M.A->dim()));
  for (const auto& r : M.relations.basis) red.add(r);
  std::vector<uint64_t> ranks(idx.size() + 1);
  ranks[idx.size()] = red.rank();
  for (size_t i = idx.size(); i-- > 0;) {
    red.add(M.A->monomial(idx[i]));
    ranks[i] = red.rank();
  }
  for (size_t i = 0; i < idx.size(); ++i) {
    FiltrationStep st;
    st.alpha = idx[i];
    st.piece_dim = ranks[i] - rel;
    st.quotient_dim = ranks[i] - ranks[i + 1];
    out.push_back(std::move(st));
  }
  return out;
}

SurjectionReport surjection_check(const AlgebraModule& M, const MonomialIndex& beta,
                                  const MonomialIndex& alpha) {
  const TruncatedAlgebra& A = *M.A;
  MonomialIndex diff = sub_indices(alpha, beta);
  SurjectionReport rep;

  FpSubspace Malpha = M.filtration_piece(alpha);
  rep.rhs_rank = Malpha.dim();

  // z^(alpha-beta) M_beta + M_alpha'.
  std::vector<FpVec> rows = M.relations.basis;
  const auto& idx = A.index_list();
  for (uint64_t i = A.index_position(beta); i < idx.size(); ++i)
    rows.push_back(A.mult_monomial_left(diff, A.monomial(idx[i])));
  uint64_t apos = A.index_position(alpha);
  if (apos + 1 < idx.size())
    for (uint64_t i = apos + 1; i < idx.size(); ++i) rows.push_back(A.monomial(idx[i]));
  FpSubspace lhs = FpSubspace::from_vectors(A.p(), uint32_t(A.dim()), rows);
  rep.lhs_rank = lhs.dim();
  rep.lhs_contained = Malpha.contains(lhs);
  rep.surjective = rep.lhs_contained && rep.lhs_rank == rep.rhs_rank;
  return rep;
}

uint64_t count_nonmajorizing(const MonomialIndex& alpha, uint32_t l, uint32_t p) {
  if (alpha.size() != 3) throw ParamError("count_nonmajorizing: triple expected");
  uint64_t pl = ipow(p, l);
  uint64_t total = pl * pl * pl;
  uint64_t major = 1;
  for (uint32_t a : alpha) major *= pl > a ? pl - a : 0;
  return total - major;
}

uint64_t count_nonmajorizing_bruteforce(const MonomialIndex& alpha, uint32_t l, uint32_t p) {
  if (alpha.size() != 3) throw ParamError("count_nonmajorizing_bruteforce: triple expected");
  uint64_t pl = ipow(p, l);
  uint64_t count = 0;
  for (uint64_t b0 = 0; b0 < pl; ++b0)
    for (uint64_t b1 = 0; b1 < pl; ++b1)
      for (uint64_t b2 = 0; b2 < pl; ++b2)
        if (!(b0 >= alpha[0] && b1 >= alpha[1] && b2 >= alpha[2])) ++count;
  return count;
}

}  // namespace sl2lab
