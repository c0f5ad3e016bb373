#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sl2lab/fp_linalg.hpp"
#include "sl2lab/group.hpp"
#include "sl2lab/subgroups.hpp"

namespace sl2lab {

// Sparse group-algebra element over a Carrier: (element index, coefficient).
using SparseElt = std::vector<std::pair<uint64_t, uint8_t>>;

SparseElt sparse_normalize(uint32_t p, SparseElt v);
// (1 - g) v.
SparseElt sparse_z_mult(const Carrier& car, uint32_t p, uint64_t g, const SparseElt& v);
uint8_t sparse_augmentation(uint32_t p, const SparseElt& v);

// Seeded random element of the augmentation ideal: a short F_p-combination
// of monomials in the z_i = 1 - g_i, nonzero, augmentation 0.
SparseElt random_cyclic_relator(const Carrier& car, uint32_t p,
                                const std::vector<uint64_t>& z_gen_elts, Rng& rng,
                                uint32_t max_terms = 6, uint32_t max_degree = 4);

// Finite-dimensional F_p module with a left action of the carrier group.
// gen_mats match gen_elts; full_action gives the matrix of any element.
struct GModule {
  uint32_t p = 0;
  uint32_t dim = 0;
  std::vector<uint64_t> gen_elts;
  std::vector<FpMat> gen_mats;
  std::string provenance;  // regular / cyclic-quotient / tensor / coset / trivial
  std::function<FpMat(uint64_t)> full_action;
};

GModule trivial_module(const Carrier& car, uint32_t p, const std::vector<uint64_t>& gen_elts);
GModule regular_module(const Carrier& car, uint32_t p, const std::vector<uint64_t>& gen_elts);
// A / A x with an explicit quotient basis; feasible while |carrier| stays
// within the linear-algebra cap.
GModule cyclic_module_explicit(const Carrier& car, uint32_t p, const SparseElt& x,
                               const std::vector<uint64_t>& gen_elts);
// Quotient of the group algebra by an explicitly spanned left submodule.
GModule quotient_module_explicit(const Carrier& car, uint32_t p,
                                 const std::vector<FpVec>& relation_rows,
                                 const std::vector<uint64_t>& gen_elts);
// F_p[p.Z_p/p^k] as a module over the t=1 carrier (pushforward action).
GModule coset_gmodule(const Carrier& car, uint32_t k, const std::vector<uint64_t>& gen_elts);
// Diagonal action on the tensor product.
GModule tensor_module(const GModule& a, const GModule& b);

// Generator matrices invertible, orders respected, and random generator
// words consistent with full_action.
bool validate_gmodule(const Carrier& car, const GModule& m, Rng& rng, uint32_t words = 8);

struct CoinvariantResult {
  uint64_t dim = 0;
  FpMat projection;  // dim(M_T) x dim(M): reduction onto the quotient basis
};

// M_T = M / span{(g-1)m}, computed from the matrices of the subgroup
// generators acting on M.  The projection matrix is skipped when not
// requested (it costs another reduction pass).
CoinvariantResult coinvariants(const GModule& m, const std::vector<FpMat>& subgroup_action,
                               bool want_projection = true);

// Orbit partition of the carrier under left multiplication by a generator
// list (the orbits are the right cosets of the generated subgroup).
struct OrbitPartition {
  std::vector<uint32_t> orbit_of;
  uint32_t norbits = 0;
  std::vector<uint64_t> reps;
};
OrbitPartition left_orbits(const Carrier& car, const std::vector<uint64_t>& gens);

// Test-module family for the coinvariant sweeps: the regular and trivial
// modules plus seeded cyclic quotients A/Ax, handled without materializing
// a basis (the cyclic coinvariant dimension is computed inside F_p[T\Q]).
struct TestModule {
  enum class Kind { Trivial, Regular, Cyclic } kind = Kind::Regular;
  SparseElt x;
  uint64_t seed = 0;
  std::string name;

  static TestModule trivial() { return {Kind::Trivial, {}, 0, "trivial"}; }
  static TestModule regular() { return {Kind::Regular, {}, 0, "regular"}; }
  static TestModule cyclic(SparseElt x, uint64_t seed) {
    return {Kind::Cyclic, std::move(x), seed, "cyclic[" + std::to_string(seed) + "]"};
  }
};

// Caches realized subgroups and their orbit partitions for one (p, N, t).
class CoinvLab {
 public:
  CoinvLab(uint32_t p, uint32_t N, uint32_t t = 1, uint64_t enum_cap = kDefaultEnumCap,
           uint32_t dim_cap = 4096);

  const LevelContext& ctx() const { return ctx_; }
  const LevelGroup& level_group() const { return *lg_; }
  const Carrier& carrier() const { return *car_; }
  uint32_t t() const { return t_; }
  uint32_t p() const { return ctx_.p; }
  // Topological generator elements (3 per copy), used for z-monomials and
  // as the acting generators of explicit modules.
  const std::vector<uint64_t>& z_generator_elements() const { return zgen_; }

  struct Sub {
    std::string name;
    std::vector<uint64_t> gens;
    OrbitPartition orbits;
    uint64_t order = 0;  // order of the generated subgroup inside the carrier
  };

  // t = 1 families (throws ParamError when t != 1).
  const Sub& subgroup(const SubgroupSpec& spec);
  // Product subgroup, one spec per copy.
  const Sub& product_subgroup(const std::vector<SubgroupSpec>& specs);
  // Ad hoc subgroup from explicit generators (not cached).
  Sub subgroup_from_generators(const std::string& name, std::vector<uint64_t> gens) const;
  // Conjugate subgroup g S g^-1.
  Sub conjugated(const Sub& s, uint64_t g) const;
  // Set operations on generated subgroups (element sets inside the carrier).
  std::vector<uint64_t> element_set(const Sub& s) const;
  Sub meet(const Sub& a, const Sub& b) const;  // intersection
  Sub join(const Sub& a, const Sub& b) const;  // generated subgroup

  // dim M_T for the test-module family.
  uint64_t coinv_dim(const TestModule& m, const Sub& T) const;
  // dim of the module itself (explicit rank; needs |carrier| <= dim_cap).
  uint64_t module_dim(const TestModule& m) const;

  GModule explicit_module(const TestModule& m) const;
  // Deterministic from the seed alone.
  TestModule random_cyclic(uint64_t seed) const;

  uint64_t random_element(Rng& rng) const;

 private:
  LevelContext ctx_;
  uint32_t t_;
  uint64_t enum_cap_;
  uint32_t dim_cap_;
  std::unique_ptr<LevelGroup> lg_;
  std::unique_ptr<Carrier> car_;
  std::vector<uint64_t> zgen_;
  std::map<std::string, Sub> cache_;

  Sub build_sub(const std::string& name, std::vector<uint64_t> gens) const;
};

// ---- checks -------------------------------------------------------------

struct InclExclReport {
  uint64_t dim_a = 0, dim_b = 0, dim_meet = 0, dim_join = 0;
  bool holds = false;  // dim_a + dim_b <= dim_meet + dim_join
};
InclExclReport inclusion_exclusion_check(CoinvLab& lab, const TestModule& m, const CoinvLab::Sub& A,
                                         const CoinvLab::Sub& B);

// dim M_{g S g^-1} == dim M_S.
bool conjugation_invariance_check(CoinvLab& lab, const TestModule& m, const CoinvLab::Sub& S,
                                  uint64_t g);
// Witness on an explicit module: rho(g) carries the coinvariant relation
// space of S onto that of the conjugate.
bool conjugation_witness_check(const Carrier& car, const GModule& M, const CoinvLab::Sub& S,
                               uint64_t g);

struct RecursionReport {
  uint64_t dim_lj = 0, dim_lj1 = 0, dim_l1j1 = 0;
  bool holds = false;  // 3 dim_lj <= 2 dim_lj1 + dim_l1j1
};
RecursionReport recursion_check(CoinvLab& lab, const TestModule& m, uint32_t l, uint32_t j);

struct PropSingleReport {
  uint32_t k = 0;
  uint64_t dim_t = 0;
  std::vector<uint64_t> dim_g;  // dim M_{G(p^l)}, l = 1..k
  uint32_t c_witness_l = 0;     // l attaining the minimal constant C
  bool asserted = false;        // k >= 2 rows are asserted; k = 1 reported only
  bool holds = false;           // dim_t <= C eta^(k-2) p^(2k), eta = (2p^2+1)/p^2
  bool holds_strict = false;    // same with eta = (2p^2+1)/(3p^2), report-only
  double ratio = 0.0, ratio_strict = 0.0;
};
PropSingleReport prop_single_check(CoinvLab& lab, const TestModule& m, uint32_t k);

struct IndhypRow {
  uint32_t l = 0, j = 0;
  uint64_t dim = 0;
  bool asserted = false;  // j >= 1
  bool holds = false;     // dim <= C eta^(j-1) p^(2l)
  double ratio = 0.0, ratio_strict = 0.0;
};
std::vector<IndhypRow> indhyp_sweep(CoinvLab& lab, const TestModule& m, uint32_t lmax);

struct ProductCaseRow {
  std::vector<uint32_t> k;
  uint64_t dim = 0;
  uint64_t index = 0;   // |GG : TT_k|
  double ratio = 0.0;   // dim / (eta^kappa index)
  double ratio_strict = 0.0;
};
struct ProductCaseReport {
  std::vector<ProductCaseRow> rows;
  uint64_t module_dim = 0;
  bool sanity = false;        // every dim <= module_dim
  bool monotone = false;      // k <= k' entrywise implies dim_k <= dim_k'
  bool ratio_bounded = false; // every ratio below the configured constant
  double fitted_exponent = 0; // slope of log_p dim along the diagonal
};
ProductCaseReport coinvarlem_product_check(CoinvLab& lab, const TestModule& m, uint32_t kmax,
                                           double ratio_cap = 4.0);

struct ShapiroReport {
  uint64_t lhs = 0;  // dim (M tensor F_p[G/H(p^k)])_G
  uint64_t rhs = 0;  // dim M_{H(p^k)}
  bool holds = false;
};
ShapiroReport shapiro_h0_check(CoinvLab& lab, const TestModule& m, uint32_t k);

struct HarrisRow {
  uint32_t n = 0;
  uint64_t dim = 0;
  double log_p_dim = 0.0;
};
std::vector<HarrisRow> harris_report(CoinvLab& lab, const TestModule& m, uint32_t nmax);

// (ln 3p^2 - ln(2p^2+1)) / (2 ln p).
double delta_of_p(uint32_t p);
std::vector<uint32_t> primes_up_to(uint32_t n);

}  // namespace sl2lab
