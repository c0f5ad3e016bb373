#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sl2lab/sym_power.hpp"

using namespace sl2lab;

TEST_CASE("rational arithmetic") {
  Rat a(1, 2), b(1, 3);
  CHECK(a + b == Rat(5, 6));
  CHECK(a * b == Rat(1, 6));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(6, 4).is_p_integral(3));
  CHECK_FALSE(Rat(1, 3).is_p_integral(3));
  CHECK(Rat(5, 2).mod_p(3) == 1);  // 5 * inv(2) = 5 * 2 = 10 = 1 mod 3
  CHECK_THROWS_AS(Rat(1, 0), DomainError);
  CHECK_THROWS_AS(Rat(1, 3).mod_p(3), DomainError);
}

TEST_CASE("lattice basis size and the d = 0 case") {
  auto b0 = sym_lattice_basis(3, 3, 0);
  REQUIRE(b0.size() == 1);
  CHECK(sym_reduce(3, 3, b0[0].poly) == FpVec(9, 1));  // constants

  auto b1 = sym_lattice_basis(3, 3, 1);
  CHECK(b1.size() == 2);  // dim Sym^1 = 2
  CHECK_THROWS_AS(sym_lattice_basis(3, 2, 3), ParamError);
}

TEST_CASE("integrality: complete residue certificate plus random points") {
  for (uint32_t p : {2u, 3u}) {
    for (uint32_t k = 2; k <= 4; ++k) {
      uint64_t n = ipow(p, k - 1);
      for (uint32_t d = 0; d <= 4 && uint64_t(d) + 1 <= n; ++d) {
        Rng rng(900 + p * 10 + d);
        for (const auto& f : sym_lattice_basis(p, k, d)) {
          CHECK(integrality_certificate(p, d, f));
          CHECK(integrality_spot_check(p, k, f, 100, rng));
        }
      }
    }
  }
}

TEST_CASE("reduction lands on F(d+1)") {
  // dim Sym^d = d + 1 forces the measured image dimension.
  {
    auto r = sym_reduction(3, 3, 1);
    CHECK(r.m == 2);
    CHECK(r.g_invariant);
  }
  int resolution = -100;
  for (uint32_t p : {2u, 3u}) {
    for (uint32_t k = 2; k <= 4; ++k) {
      uint64_t n = ipow(p, k - 1);
      for (uint32_t d = 0; d <= 4 && uint64_t(d) + 1 <= n; ++d) {
        auto r = sym_reduction(p, k, d);
        CHECK(r.image == filtration_F(p, k, r.m));
        CHECK(r.g_invariant);
        if (resolution == -100) resolution = int(r.m) - int(d);
        CHECK(int(r.m) - int(d) == resolution);
      }
    }
  }
  CHECK(resolution == 1);
}

TEST_CASE("reduction commutes with the action") {
  Rng rng(77);
  CHECK(sym_equivariance_check(3, 3, 2, 50, rng));
  Rng rng2(78);
  CHECK(sym_equivariance_check(2, 4, 3, 25, rng2));
  // Identity acts trivially.
  LevelContext ctx(3, 3);
  auto basis = sym_lattice_basis(3, 3, 2);
  for (const auto& f : basis) {
    HomPoly acted = sym_act(GroupElement::identity(ctx), f.poly);
    CHECK(sym_reduce(3, 3, acted) == sym_reduce(3, 3, f.poly));
  }
}
