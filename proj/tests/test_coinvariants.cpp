#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sl2lab/coinvariants.hpp"

using namespace sl2lab;

TEST_CASE("delta formula") {
  CHECK(delta_of_p(2) == doctest::Approx(0.2075187496).epsilon(1e-9));
  CHECK(delta_of_p(3) == doctest::Approx(0.1599280704).epsilon(1e-8));
  // p = 2 gives the largest value of the formula (delta is decreasing in p).
  auto primes = primes_up_to(100);
  for (uint32_t p : primes)
    if (p != 2) CHECK(delta_of_p(p) < delta_of_p(2));
  for (size_t i = 0; i + 1 < primes.size(); ++i)
    CHECK(delta_of_p(primes[i + 1]) < delta_of_p(primes[i]));
}

TEST_CASE("trivial and regular coinvariants") {
  CoinvLab lab(3, 3, 1);
  auto triv = TestModule::trivial();
  auto reg = TestModule::regular();
  for (uint32_t k = 1; k <= 3; ++k) {
    const auto& S = lab.subgroup(SubgroupSpec::Gk(k));
    CHECK(lab.coinv_dim(triv, S) == 1);
    CHECK(lab.coinv_dim(reg, S) == ipow(3, 3 * (k - 1)));
  }
  // Regular module under the full group: the augmentation quotient.
  CHECK(lab.coinv_dim(reg, lab.subgroup(SubgroupSpec::Gk(1))) == 1);
}

TEST_CASE("fast path agrees with matrices and with full enumeration") {
  for (uint32_t p : {2u, 3u}) {
    CoinvLab lab(p, 2, 1);
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
      auto M = lab.random_cyclic(seed);
      GModule E = lab.explicit_module(M);
      CHECK(lab.module_dim(M) == E.dim);
      for (auto spec : {SubgroupSpec::Gk(1), SubgroupSpec::Gk(2), SubgroupSpec::Tk(2),
                        SubgroupSpec::Hk(2)}) {
        const auto& S = lab.subgroup(spec);
        std::vector<FpMat> gen_mats, all_mats;
        for (uint64_t g : S.gens) gen_mats.push_back(E.full_action(g));
        for (uint64_t g : lab.element_set(S)) all_mats.push_back(E.full_action(g));
        uint64_t fast = lab.coinv_dim(M, S);
        CHECK(fast == coinvariants(E, gen_mats, false).dim);
        CHECK(fast == coinvariants(E, all_mats, false).dim);  // generator sufficiency
      }
    }
  }
}

TEST_CASE("coinvariant projection matrix") {
  CoinvLab lab(3, 2, 1);
  auto M = lab.random_cyclic(11);
  GModule E = lab.explicit_module(M);
  const auto& S = lab.subgroup(SubgroupSpec::Tk(2));
  std::vector<FpMat> mats;
  for (uint64_t g : S.gens) mats.push_back(E.full_action(g));
  auto res = coinvariants(E, mats);
  CHECK(res.projection.rows == res.dim);
  CHECK(res.projection.cols == E.dim);
  // The projection kills every relation vector (g - 1) m.
  for (const auto& mat : mats)
    for (uint32_t j = 0; j < E.dim; ++j) {
      FpVec v(E.dim, 0);
      for (uint32_t i = 0; i < E.dim; ++i) v[i] = mat.at(i, j);
      v[j] = uint8_t((v[j] + E.p - 1) % E.p);
      CHECK(res.projection.apply(v) == FpVec(res.dim, 0));
    }
}

TEST_CASE("mismatched action matrices are a context error") {
  CoinvLab lab(3, 2, 1);
  GModule E = lab.explicit_module(lab.random_cyclic(8));
  std::vector<FpMat> wrong = {FpMat::identity(3, E.dim + 1)};
  CHECK_THROWS_AS(coinvariants(E, wrong, false), ContextError);
}

TEST_CASE("module validation") {
  CoinvLab lab(3, 2, 1);
  Rng rng(9);
  for (auto m : {TestModule::trivial(), TestModule::regular(), lab.random_cyclic(6)}) {
    GModule E = lab.explicit_module(m);
    CHECK(validate_gmodule(lab.carrier(), E, rng));
  }
}

TEST_CASE("monotonicity: bigger subgroups give smaller coinvariants") {
  CoinvLab lab(3, 3, 1);
  for (uint64_t seed : {10ull, 11ull, 12ull}) {
    auto M = lab.random_cyclic(seed);
    uint64_t prev = UINT64_MAX;
    for (uint32_t k = 1; k <= 3; ++k) {
      // G(p^k) shrinks as k grows, so the coinvariants grow.
      uint64_t d = lab.coinv_dim(M, lab.subgroup(SubgroupSpec::Gk(k)));
      if (prev != UINT64_MAX) CHECK(prev <= d);
      prev = d;
    }
  }
}

TEST_CASE("inclusion-exclusion") {
  CoinvLab lab(3, 4, 1);
  const auto& A = lab.subgroup(SubgroupSpec::Tlj(3, 2));
  uint64_t nj = lab.level_group().encode(nj_element(lab.ctx(), 2));
  auto B = lab.conjugated(A, nj);

  // A = B: equality case.
  {
    auto M = lab.random_cyclic(21);
    auto rep = inclusion_exclusion_check(lab, M, A, A);
    CHECK(rep.holds);
    CHECK(rep.dim_a + rep.dim_b == rep.dim_meet + rep.dim_join);
  }
  // Trivial module: 1 + 1 <= 1 + 1.
  {
    auto rep = inclusion_exclusion_check(lab, TestModule::trivial(), A, B);
    CHECK(rep.holds);
    CHECK(rep.dim_meet + rep.dim_join == 2);
  }
  for (uint64_t seed = 100; seed < 130; ++seed) {
    auto M = lab.random_cyclic(seed);
    CHECK(inclusion_exclusion_check(lab, M, A, B).holds);
  }
}

TEST_CASE("conjugation invariance with explicit witness") {
  CoinvLab lab(3, 2, 1);
  const auto& S = lab.subgroup(SubgroupSpec::Tk(2));
  Rng rng(64);
  for (uint64_t seed : {31ull, 32ull}) {
    auto M = lab.random_cyclic(seed);
    CHECK(conjugation_invariance_check(lab, M, S, lab.carrier().identity_index()));
    GModule E = lab.explicit_module(M);
    for (int i = 0; i < 50; ++i) {
      uint64_t g = lab.random_element(rng);
      CHECK(conjugation_invariance_check(lab, M, S, g));
      CHECK(conjugation_witness_check(lab.carrier(), E, S, g));
    }
  }
}

TEST_CASE("recursion inequality at p=3") {
  CoinvLab lab(3, 4, 1);
  // Trivial module: 3 <= 2 + 1 with equality.
  auto rep = recursion_check(lab, TestModule::trivial(), 3, 2);
  CHECK(rep.holds);
  CHECK(rep.dim_lj == 1);
  CHECK(recursion_check(lab, TestModule::regular(), 3, 2).holds);
  for (uint64_t seed = 200; seed < 230; ++seed)
    CHECK(recursion_check(lab, lab.random_cyclic(seed), 3, 2).holds);
  CHECK_THROWS_AS(recursion_check(lab, TestModule::trivial(), 3, 1), ParamError);
}

TEST_CASE("prop single: trivial and regular module values") {
  CoinvLab lab(3, 4, 1);
  {
    auto rep = prop_single_check(lab, TestModule::trivial(), 3);
    CHECK(rep.holds);
    CHECK(rep.dim_t == 1);
  }
  {
    // Regular module: dim A_{G(p^l)} = p^(3(l-1)), dim A_{T(p^k)} = p^(2(k-1)).
    auto rep = prop_single_check(lab, TestModule::regular(), 3);
    CHECK(rep.dim_t == ipow(3, 4));
    CHECK(rep.dim_g[0] == 1);
    CHECK(rep.dim_g[1] == 27);
    CHECK(rep.dim_g[2] == 729);
    CHECK(rep.holds);
    CHECK(rep.c_witness_l == 3);  // C = p^(l-3) peaks at l = k
  }
  for (uint64_t seed = 300; seed < 320; ++seed) {
    auto rep = prop_single_check(lab, lab.random_cyclic(seed), 3);
    CHECK(rep.holds);
  }
}

TEST_CASE("shapiro degree zero") {
  CoinvLab lab(3, 3, 1);
  {
    auto rep = shapiro_h0_check(lab, TestModule::trivial(), 2);
    CHECK(rep.holds);
    CHECK(rep.lhs == 1);  // transitive action
  }
  {
    auto rep = shapiro_h0_check(lab, TestModule::regular(), 2);
    CHECK(rep.holds);
    CHECK(rep.rhs == 3);  // |G : H(p^2)| = p
  }
  for (uint64_t seed = 400; seed < 410; ++seed)
    CHECK(shapiro_h0_check(lab, lab.random_cyclic(seed), 2).holds);
}

TEST_CASE("shapiro also at the top level k = 3") {
  CoinvLab lab(3, 3, 1);
  for (uint64_t seed : {500ull, 501ull, 502ull})
    CHECK(shapiro_h0_check(lab, lab.random_cyclic(seed), 3).holds);
  CHECK(shapiro_h0_check(lab, TestModule::regular(), 3).holds);
}

TEST_CASE("indhyp sweep rows") {
  CoinvLab lab(3, 4, 1);
  for (const auto& m : {TestModule::trivial(), TestModule::regular(), lab.random_cyclic(600)}) {
    auto rows = indhyp_sweep(lab, m, 3);
    CHECK(rows.size() == 6);  // (1,0),(2,0),(2,1),(3,0),(3,1),(3,2)
    for (const auto& row : rows)
      if (row.asserted) CHECK(row.holds);
  }
}

TEST_CASE("tensor module dimensions and diagonal action") {
  CoinvLab lab(3, 2, 1);
  GModule M = lab.explicit_module(lab.random_cyclic(3));
  GModule L = coset_gmodule(lab.carrier(), 2, M.gen_elts);
  GModule T = tensor_module(M, L);
  CHECK(T.dim == M.dim * L.dim);
  Rng rng(12);
  CHECK(validate_gmodule(lab.carrier(), T, rng));
}

TEST_CASE("product case at t=2") {
  CoinvLab lab(3, 2, 2);
  CHECK(lab.carrier().size() == 729);
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    auto M = lab.random_cyclic(seed);
    auto rep = coinvarlem_product_check(lab, M, 2);
    CHECK(rep.sanity);
    CHECK(rep.monotone);
    CHECK(rep.rows.size() == 4);
  }
  auto reg = coinvarlem_product_check(lab, TestModule::regular(), 2);
  CHECK(reg.sanity);
  // Regular module: dim = |GG : TT_k| exactly, so each ratio is eta^-kappa.
  for (const auto& row : reg.rows) CHECK(row.dim == row.index);
}

TEST_CASE("harris growth rows") {
  CoinvLab lab(3, 3, 1);
  auto rows = harris_report(lab, TestModule::regular(), 3);
  REQUIRE(rows.size() == 3);
  for (uint32_t n = 1; n <= 3; ++n) {
    CHECK(rows[n - 1].dim == ipow(3, 3 * (n - 1)));
    CHECK(rows[n - 1].log_p_dim == doctest::Approx(3.0 * (n - 1)));
  }
}

TEST_CASE("random relators are reproducible and in the augmentation ideal") {
  CoinvLab lab(3, 3, 1);
  auto a = lab.random_cyclic(123);
  auto b = lab.random_cyclic(123);
  CHECK(a.x == b.x);
  CHECK(sparse_augmentation(3, a.x) == 0);
  CHECK_FALSE(a.x.empty());
}
