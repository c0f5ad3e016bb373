#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sl2lab/coinvariants.hpp"
#include "sl2lab/iwasawa.hpp"

using namespace sl2lab;

TEST_CASE("graded-lex order and successor") {
  TruncatedAlgebra A(3, 2, 1);
  MonomialIndex zero{0, 0, 0};
  CHECK(A.successor(zero) == MonomialIndex{0, 0, 1});
  CHECK(A.successor({0, 0, 1}) == MonomialIndex{0, 1, 0});
  CHECK(A.successor({1, 0, 0}) == MonomialIndex{0, 0, 2});
  CHECK(grlex_less({0, 1, 0}, {1, 0, 0}));
  CHECK(grlex_less({1, 0, 0}, {0, 1, 1}));  // degree wins
  CHECK(A.index_list().size() == 27);
}

TEST_CASE("z generators: unit, nilpotency, augmentation") {
  TruncatedAlgebra A(3, 3, 1);
  for (uint32_t i = 0; i < 3; ++i) {
    FpVec z = A.z_generator(i);
    CHECK(A.augmentation(z) == 0);
    CHECK(A.mult_group_left(A.carrier().identity_index(), z) == z);
    FpVec acc = A.unit();
    for (uint32_t r = 0; r < A.exponent_cap(); ++r) acc = A.mult_z_left(i, acc);
    CHECK(acc == A.zero());  // z_i^(p^(N-1)) = 0
  }
}

TEST_CASE("monomial basis ranks") {
  TruncatedAlgebra A2(3, 2, 1);
  CHECK(A2.dim() == 27);
  CHECK(A2.monomial_basis_full_rank());
  TruncatedAlgebra A3(3, 3, 1);
  CHECK(A3.dim() == 729);
  CHECK(A3.monomial_basis_full_rank());
  TruncatedAlgebra T2(3, 2, 2);
  CHECK(T2.dim() == 729);
  CHECK(T2.monomial_basis_full_rank());
}

TEST_CASE("p=2: monomial family from G(2) is rank-deficient, from G(4) a basis") {
  TruncatedAlgebra bad(2, 3, 1, 1);
  CHECK_FALSE(bad.monomial_basis_full_rank());  // G(2) is not uniform
  TruncatedAlgebra good(2, 3, 1, 2);
  CHECK(good.monomial_basis_full_rank());
  TruncatedAlgebra good4(2, 4, 1, 2);
  CHECK(good4.monomial_basis_full_rank());
}

TEST_CASE("graded commutativity") {
  TruncatedAlgebra A(3, 3, 1);
  CHECK(graded_commutativity_check(A, {0, 0, 0}, {1, 2, 0}));  // alpha = 0 commutes exactly
  CHECK(graded_commutativity_check(A, {1, 0, 0}, {0, 1, 0}));
  Rng rng(404);
  for (int s = 0; s < 100; ++s) {
    MonomialIndex a(3), b(3);
    for (auto& x : a) x = uint32_t(rng.below(3));
    for (auto& x : b) x = uint32_t(rng.below(3));
    CHECK(graded_commutativity_check(A, a, b));
  }
}

TEST_CASE("ideal I_alpha spans and two-sidedness") {
  TruncatedAlgebra A(3, 2, 1);
  for (const auto& alpha : A.index_list()) {
    auto rep = ideal_I_alpha(A, alpha);
    CHECK(rep.two_sided);
    // Successive ideals are nested.
    if (alpha != A.index_list().back()) {
      auto next = ideal_I_alpha(A, A.successor(alpha), false);
      CHECK(rep.span.contains(next.span));
      CHECK(rep.span.dim() == next.span.dim() + 1);
    }
  }
}

TEST_CASE("ideal I(p^l): kernel vs monomial span") {
  TruncatedAlgebra A(3, 3, 1);
  for (uint32_t l = 1; l <= 3; ++l) {
    auto rep = ideal_Ip(A, l);
    CHECK(rep.descriptions_equal);
    CHECK(rep.kernel.dim() == A.dim() - ipow(3, 3 * (l - 1)));
  }
  // l = 1: codimension 1 (augmentation-style); l = N: the zero ideal.
  CHECK(ideal_Ip(A, 1).codim == 1);
  CHECK(ideal_Ip(A, 3).kernel.dim() == 0);
}

TEST_CASE("module filtration and surjections at (t=1, p=3, N=2)") {
  TruncatedAlgebra A(3, 2, 1);
  auto reg = AlgebraModule::cyclic(A, A.zero());
  CHECK(reg.dim == 27);

  // Seeded cyclic module.
  FpVec x = A.z_generator(0);
  {
    FpVec z11 = A.mult_z_left(1, A.z_generator(1));
    for (size_t i = 0; i < x.size(); ++i) x[i] = uint8_t((x[i] + z11[i]) % 3);
  }
  auto M = AlgebraModule::cyclic(A, x);
  CHECK(M.dim < 27);
  CHECK(M.dim > 0);

  for (const auto* mod : {&reg, &M}) {
    // alpha = beta: the identity map, trivially surjective.
    for (const auto& alpha : A.index_list())
      if (monomial_degree(alpha) <= 2) CHECK(surjection_check(*mod, alpha, alpha).surjective);
    // All comparable pairs of degree <= 3.
    for (const auto& beta : A.index_list()) {
      if (monomial_degree(beta) > 3) continue;
      for (const auto& alpha : A.index_list()) {
        if (monomial_degree(alpha) > 3 || !entrywise_leq(beta, alpha)) continue;
        auto rep = surjection_check(*mod, beta, alpha);
        CHECK(rep.lhs_contained);
        CHECK(rep.surjective);
      }
    }
  }

  // Filtration of the regular module: quotient dims are all 1 and pieces
  // shrink by one monomial at a time.
  auto filt = module_filtration(reg);
  CHECK(filt.size() == 27);
  CHECK(filt.front().piece_dim == 27);
  for (const auto& st : filt) CHECK(st.quotient_dim == 1);
}

TEST_CASE("first filtration quotient equals the G-coinvariants") {
  TruncatedAlgebra A(3, 2, 1);
  CoinvLab lab(3, 2, 1);
  const auto& G = lab.subgroup(SubgroupSpec::Gk(1));
  Rng rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    FpVec x = A.zero();
    for (int s = 0; s < 3; ++s) {
      MonomialIndex mi(3, 0);
      for (uint32_t d = 0, deg = 1 + uint32_t(rng.below(3)); d < deg; ++d) ++mi[rng.below(3)];
      FpVec mono = A.monomial(mi);
      uint8_t coef = uint8_t(1 + rng.below(2));
      for (size_t i = 0; i < x.size(); ++i) x[i] = uint8_t((x[i] + coef * mono[i]) % 3);
    }
    auto M = AlgebraModule::cyclic(A, x);
    auto filt = module_filtration(M);
    GModule E =
        quotient_module_explicit(lab.carrier(), 3, M.relations.basis, lab.z_generator_elements());
    std::vector<FpMat> mats;
    for (uint64_t g : G.gens) mats.push_back(E.full_action(g));
    CHECK(filt.front().quotient_dim == coinvariants(E, mats, false).dim);
  }
}

TEST_CASE("count_nonmajorizing: closed form vs enumeration") {
  CHECK(count_nonmajorizing({0, 0, 0}, 1, 3) == 0);
  CHECK(count_nonmajorizing({1, 0, 0}, 1, 3) == 9);   // 27 - 18
  CHECK(count_nonmajorizing({1, 1, 1}, 2, 2) == 37);  // 64 - 27
  for (uint32_t p : {2u, 3u}) {
    for (uint32_t l = 1; l <= 3; ++l) {
      for (uint32_t a0 = 0; a0 <= 3; ++a0)
        for (uint32_t a1 = 0; a1 <= 3; ++a1)
          for (uint32_t a2 = 0; a2 <= 3; ++a2) {
            MonomialIndex alpha{a0, a1, a2};
            uint64_t v = count_nonmajorizing(alpha, l, p);
            CHECK(v == count_nonmajorizing_bruteforce(alpha, l, p));
            if (a0 + a1 + a2 > 0) CHECK(v <= uint64_t(a0 + a1 + a2) * ipow(p, 2 * l));
          }
    }
  }
}
