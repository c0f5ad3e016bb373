#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sl2lab/subgroups.hpp"

using namespace sl2lab;

TEST_CASE("group element arithmetic") {
  LevelContext ctx(3, 2);
  GroupElement id = GroupElement::identity(ctx);
  GroupElement u(ctx, 1, 3, 0, 1);
  CHECK(multiply(id, u) == u);
  CHECK(multiply(u, inverse(u)) == id);

  // (1,p;0,1)(1,0;p,1) = (1+p^2, p; p, 1) mod p^N.
  GroupElement l(ctx, 1, 0, 3, 1);
  GroupElement prod = multiply(u, l);
  CHECK(prod == GroupElement(ctx, (1 + 9) % 9, 3, 3, 1));

  CHECK_THROWS_AS(GroupElement(ctx, 1, 1, 1, 1), DomainError);  // det != 1
  LevelContext other(3, 3);
  CHECK_THROWS_AS(multiply(u, GroupElement::identity(other)), ContextError);
}

TEST_CASE("level group indexing round-trips") {
  for (uint32_t p : {2u, 3u, 5u}) {
    LevelContext ctx(p, 2);
    LevelGroup lg(ctx);
    CHECK(lg.size() == ipow(p, 3));
    for (uint64_t i = 0; i < lg.size(); ++i) {
      CHECK(lg.encode(lg.decode(i)) == i);
      CHECK(lg.mul(i, lg.inv(i)) == lg.identity_index());
    }
  }
}

TEST_CASE("subgroup orders and indices") {
  // |G(p)/G(p^N)| = p^(3(N-1)) and the index formulas, by enumeration.
  for (uint32_t p : {2u, 3u, 5u}) {
    uint32_t N = p == 5 ? 3 : 4;
    LevelContext ctx(p, N);
    LevelGroup lg(ctx);
    auto G = realize(SubgroupSpec::Gk(1), lg);
    CHECK(G.order == ipow(p, 3 * (N - 1)));
    for (uint32_t k = 1; k <= N; ++k) {
      auto gk = realize(SubgroupSpec::Gk(k), lg);
      auto tk = realize(SubgroupSpec::Tk(k), lg);
      auto hk = realize(SubgroupSpec::Hk(k), lg);
      CHECK(subgroup_index(lg, gk, G) == ipow(p, 3 * (k - 1)));
      CHECK(subgroup_index(lg, tk, G) == ipow(p, 2 * (k - 1)));
      CHECK(subgroup_index(lg, hk, G) == ipow(p, k - 1));
    }
  }
}

TEST_CASE("spec index examples") {
  {
    LevelContext ctx(3, 2);
    LevelGroup lg(ctx);
    auto G = realize(SubgroupSpec::Gk(1), lg);
    CHECK(G.order == 27);
    auto g2 = realize(SubgroupSpec::Gk(2), lg);
    CHECK(subgroup_index(lg, g2, G) == 27);
    CHECK(subgroup_index(lg, G, G) == 1);
  }
  {
    LevelContext ctx(2, 3);
    LevelGroup lg(ctx);
    auto G = realize(SubgroupSpec::Gk(1), lg);
    auto t2 = realize(SubgroupSpec::Tk(2), lg);
    CHECK(subgroup_index(lg, t2, G) == 4);
  }
}

TEST_CASE("containment is verified") {
  LevelContext ctx(3, 3);
  LevelGroup lg(ctx);
  auto h2 = realize(SubgroupSpec::Hk(2), lg);
  auto t2 = realize(SubgroupSpec::Tk(2), lg);
  CHECK(subgroup_index(lg, t2, h2) == ipow(3, 1));  // T(p^2) inside H(p^2)
  CHECK_THROWS_AS(subgroup_index(lg, h2, t2), ContainmentError);
}

TEST_CASE("T(l,0) = G(p^l) and T(l,l-1) = T(p^l)") {
  for (uint32_t p : {2u, 3u}) {
    LevelContext ctx(p, 4);
    LevelGroup lg(ctx);
    for (uint32_t l = 1; l <= 4; ++l) {
      CHECK(subgroups_equal(lg, realize(SubgroupSpec::Tlj(l, 0), lg),
                            realize(SubgroupSpec::Gk(l), lg)));
      CHECK(subgroups_equal(lg, realize(SubgroupSpec::Tlj(l, l - 1), lg),
                            realize(SubgroupSpec::Tk(l), lg)));
    }
  }
}

TEST_CASE("parameter and resource errors") {
  LevelContext ctx(3, 3);
  LevelGroup lg(ctx);
  CHECK_THROWS_AS(realize(SubgroupSpec::Tlj(2, 2), lg), ParamError);   // j > l-1
  CHECK_THROWS_AS(realize(SubgroupSpec::Gk(4), lg), ParamError);       // k > N
  CHECK_THROWS_AS(realize(SubgroupSpec::Gk(1), lg, 10), ResourceError);
  CHECK_THROWS_AS(verify_product_identity(2, 1, lg), ParamError);      // j < 2
}

TEST_CASE("product identity: true for p=3, degenerate for p=2") {
  {
    LevelContext ctx(3, 4);
    LevelGroup lg(ctx);
    auto rep = product_identity_report(3, 2, lg);
    CHECK(rep.generated_equal);
    CHECK(rep.set_product_equal);
    CHECK(verify_product_identity(3, 2, lg));
  }
  {
    // At p = 2 the N_j-conjugates of T(l,j) coincide with T(l,j) itself
    // (v_2(a^2 - 1) >= v_2(a - 1) + 1 pushes the twist into G(2^l)), so the
    // triple product generates only T(3,2), of order 32 < 128 = |T(2,1)|.
    LevelContext ctx(2, 4);
    LevelGroup lg(ctx);
    auto rep = product_identity_report(3, 2, lg);
    CHECK_FALSE(rep.generated_equal);
    CHECK(rep.generated_order == 32);
    CHECK(rep.expected_order == 128);
    auto tlj = realize(SubgroupSpec::Tlj(3, 2), lg);
    auto prime = realize(SubgroupSpec::TljPrime(3, 2), lg);
    CHECK(subgroups_equal(lg, tlj, prime));
  }
  {
    // The same degeneration at (l,j) = (4,2), N = 5.
    LevelContext ctx(2, 5);
    LevelGroup lg(ctx);
    CHECK_FALSE(verify_product_identity(4, 2, lg));
  }
}

TEST_CASE("intersection identity rotations at p=3") {
  LevelContext ctx(3, 4);
  LevelGroup lg(ctx);
  auto rep = intersection_identity_report(3, 2, lg);
  CHECK(rep.all_ok());
  CHECK(rep.intersection_order[0] == rep.expected_order);
  CHECK(verify_intersection_identity(3, 2, lg));

  LevelContext ctx2(2, 4);
  LevelGroup lg2(ctx2);
  CHECK_FALSE(verify_intersection_identity(3, 2, lg2));
}

TEST_CASE("conjugation carries H(p^k) to T(p^((k+1)/2))") {
  {
    auto rep = conjugate_H_to_T(1, LevelContext(3, 3));
    CHECK(rep.ok);
    CHECK(rep.result_level == 3);  // s = 0, no level loss
    CHECK(rep.target_k == 1);
  }
  {
    auto rep = conjugate_H_to_T(3, LevelContext(3, 4));
    CHECK(rep.ok);
    CHECK(rep.result_level == 3);
    CHECK(rep.target_k == 2);
  }
  {
    auto rep = conjugate_H_to_T(5, LevelContext(2, 6));
    CHECK(rep.ok);
    CHECK(rep.result_level == 4);
    CHECK(rep.target_k == 3);
  }
  CHECK_THROWS_AS(conjugate_H_to_T(2, LevelContext(3, 3)), ParamError);
}

TEST_CASE("conjugation by group elements preserves subgroup order") {
  LevelContext ctx(3, 3);
  LevelGroup lg(ctx);
  auto t2 = realize(SubgroupSpec::Tk(2), lg);
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    uint64_t gi = rng.below(lg.size());
    auto conj = conjugate_subgroup(lg, lg.decode(gi), t2);
    CHECK(conj.order == t2.order);
  }
}

TEST_CASE("p=5 dim counts up to k=4 with a raised cap") {
  LevelContext ctx(5, 4);
  LevelGroup lg(ctx);
  uint64_t cap = uint64_t(1) << 21;
  auto G = realize(SubgroupSpec::Gk(1), lg, cap);
  CHECK(G.order == ipow(5, 9));
  for (uint32_t k = 1; k <= 4; ++k) {
    CHECK(subgroup_index(lg, realize(SubgroupSpec::Tk(k), lg, cap), G) == ipow(5, 2 * (k - 1)));
    CHECK(subgroup_index(lg, realize(SubgroupSpec::Hk(k), lg, cap), G) == ipow(5, k - 1));
  }
}

TEST_CASE("T(l,j) orders") {
  for (uint32_t p : {2u, 3u}) {
    LevelContext ctx(p, 4);
    LevelGroup lg(ctx);
    for (uint32_t l = 1; l <= 4; ++l)
      for (uint32_t j = 0; j + 1 <= l; ++j)
        CHECK(realize(SubgroupSpec::Tlj(l, j), lg).order == ipow(p, 3 * (4 - l) + j));
  }
}

TEST_CASE("deeper identity cases at p=3, N=5") {
  LevelContext ctx(3, 5);
  LevelGroup lg(ctx);
  CHECK(verify_product_identity(4, 2, lg));
  CHECK(verify_product_identity(4, 3, lg));
  CHECK(verify_product_identity(3, 2, lg));
  CHECK(verify_intersection_identity(4, 3, lg));
}

TEST_CASE("realizations are closed and recipe-complete") {
  for (uint32_t p : {2u, 3u}) {
    LevelContext ctx(p, 3);
    LevelGroup lg(ctx);
    uint64_t sl2_order = ipow(p, 3 * 3 - 2) * (p * p - 1);  // |SL2(Z/p^N)|
    for (auto spec : {SubgroupSpec::Gk(2), SubgroupSpec::Hk(2), SubgroupSpec::Tk(2),
                      SubgroupSpec::Tlj(2, 1)}) {
      auto r = realize(spec, lg);
      CHECK(r.recipe_complete);
      CHECK(sl2_order % r.order == 0);
      // Closed under multiplication and inverse.
      Rng rng(p * 100 + 7);
      for (int i = 0; i < 25; ++i) {
        uint64_t a = (*r.elements)[rng.below(r.order)];
        uint64_t b = (*r.elements)[rng.below(r.order)];
        CHECK(r.contains_index(lg.mul(a, b)));
        CHECK(r.contains_index(lg.inv(a)));
      }
    }
  }
}
