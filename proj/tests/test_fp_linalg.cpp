#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sl2lab/fp_linalg.hpp"
#include "sl2lab/level.hpp"

using namespace sl2lab;

namespace {

FpMat random_matrix(uint32_t p, uint32_t r, uint32_t c, Rng& rng) {
  FpMat m(p, r, c);
  for (auto& x : m.data) x = uint8_t(rng.below(p));
  return m;
}

}  // namespace

TEST_CASE("row reducer basics") {
  RowReducer red(3, 4);
  CHECK(red.add({1, 2, 0, 1}));
  CHECK(red.add({0, 1, 1, 0}));
  CHECK_FALSE(red.add({1, 0, 1, 1}));  // 2*(row2) subtracted from row1
  CHECK(red.rank() == 2);
  CHECK(red.contains({2, 1, 0, 2}));
  CHECK_FALSE(red.contains({0, 0, 1, 1}));
  FpVec r = red.reduce({1, 2, 0, 1});
  CHECK(r == FpVec(4, 0));
}

TEST_CASE("canonical form is unique under row order") {
  Rng rng(17);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FpVec> rows;
      for (int i = 0; i < 6; ++i) {
        FpVec v(5);
        for (auto& x : v) x = uint8_t(rng.below(p));
        rows.push_back(v);
      }
      auto a = FpSubspace::from_vectors(p, 5, rows);
      std::reverse(rows.begin(), rows.end());
      auto b = FpSubspace::from_vectors(p, 5, rows);
      CHECK(a == b);
      // Rebuilding from the canonical basis is the identity.
      CHECK(a == FpSubspace::from_vectors(p, 5, a.basis));
    }
  }
}

TEST_CASE("rank plus kernel dimension equals column count") {
  Rng rng(23);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 15; ++trial) {
      FpMat m = random_matrix(p, 4 + trial % 3, 5, rng);
      auto kb = kernel_basis(m);
      CHECK(rank(m) + kb.size() == m.cols);
      for (const auto& v : kb) CHECK(m.apply(v) == FpVec(m.rows, 0));
    }
  }
}

TEST_CASE("matrix inverse") {
  Rng rng(5);
  for (uint32_t p : {2u, 3u, 5u}) {
    int found = 0;
    while (found < 5) {
      FpMat m = random_matrix(p, 4, 4, rng);
      if (!is_invertible(m)) continue;
      ++found;
      CHECK(inverse(m) * m == FpMat::identity(p, 4));
    }
    FpMat sing(p, 3, 3);  // zero matrix
    CHECK_THROWS_AS(inverse(sing), DomainError);
  }
}

TEST_CASE("subspace containment and sums") {
  auto s1 = FpSubspace::from_vectors(3, 3, {{1, 0, 0}});
  auto s2 = FpSubspace::from_vectors(3, 3, {{0, 1, 0}});
  auto sum = s1.sum(s2);
  CHECK(sum.dim() == 2);
  CHECK(sum.contains(s1));
  CHECK(sum.contains(FpVec{1, 2, 0}));
  CHECK_FALSE(sum.contains(FpVec{0, 0, 1}));
}

TEST_CASE("kronecker shape and action") {
  FpMat a(3, 2, 2), b(3, 2, 2);
  a.at(0, 1) = 1;
  a.at(1, 0) = 1;
  b.at(0, 0) = 2;
  b.at(1, 1) = 1;
  FpMat k = kronecker(a, b);
  CHECK(k.rows == 4);
  CHECK(k.at(0, 2) == 2);  // a[0][1] * b[0][0]
  CHECK(k.at(1, 3) == 1);
}
