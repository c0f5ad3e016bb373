#pragma once

#include <cstdint>
#include <vector>

#include "sl2lab/errors.hpp"
#include "sl2lab/modarith.hpp"

namespace sl2lab {

// Dense vector over F_p, entries in [0, p).
using FpVec = std::vector<uint8_t>;

// Dense row-major matrix over F_p.
struct FpMat {
  uint32_t p = 0;
  uint32_t rows = 0, cols = 0;
  std::vector<uint8_t> data;

  FpMat() = default;
  FpMat(uint32_t p_, uint32_t r, uint32_t c) : p(p_), rows(r), cols(c), data(size_t(r) * c, 0) {}

  uint8_t& at(uint32_t r, uint32_t c) { return data[size_t(r) * cols + c]; }
  uint8_t at(uint32_t r, uint32_t c) const { return data[size_t(r) * cols + c]; }

  static FpMat identity(uint32_t p, uint32_t n);
  FpVec apply(const FpVec& v) const;       // this * v (column convention)
  FpMat operator*(const FpMat& o) const;
  FpMat pow(uint64_t e) const;
  bool operator==(const FpMat& o) const = default;
};

FpMat kronecker(const FpMat& a, const FpMat& b);
// Basis of the right kernel {v : M v = 0}.
std::vector<FpVec> kernel_basis(const FpMat& m);
uint32_t rank(const FpMat& m);
bool is_invertible(const FpMat& m);
FpMat inverse(const FpMat& m);  // throws DomainError if singular

// Incremental row-echelon accumulator.  add() keeps rows eliminated below
// their pivots only; canonicalize() back-substitutes to the unique reduced
// row echelon form.  Reduction scratch is int32 with deferred modular
// reduction, so rank sweeps over a few thousand columns stay cheap.
class RowReducer {
 public:
  RowReducer(uint32_t p, uint32_t ncols);

  // Returns true if v was independent (a new pivot row was added).
  bool add(const FpVec& v);
  bool add_sparse(const std::vector<std::pair<uint64_t, uint8_t>>& v);

  uint32_t rank() const { return uint32_t(rows_.size()); }
  uint32_t ncols() const { return ncols_; }
  bool full() const { return rank() == ncols_; }

  // Residue of v modulo the row space (fully reduced, entries in [0, p)).
  FpVec reduce(const FpVec& v) const;
  bool contains(const FpVec& v) const;

  // Unique RREF basis, rows sorted by pivot column.
  std::vector<FpVec> canonical() const;
  const std::vector<int32_t>& pivot_of_col() const { return row_of_col_; }

 private:
  uint32_t p_, ncols_;
  std::vector<FpVec> rows_;              // pivot entry normalized to 1
  std::vector<uint32_t> pivot_of_row_;
  std::vector<int32_t> row_of_col_;      // -1 if column is free
  mutable std::vector<int32_t> scratch_;

  void load_scratch(const FpVec& v) const;
  // Eliminates scratch_ against existing rows; returns pivot col or -1.
  int32_t eliminate() const;
};

// Canonical subspace of F_p^n: rows are the unique RREF basis, so equality
// is a syntactic check.
struct FpSubspace {
  uint32_t p = 0;
  uint32_t ncols = 0;
  std::vector<FpVec> basis;

  static FpSubspace from_vectors(uint32_t p, uint32_t ncols, const std::vector<FpVec>& vecs);
  static FpSubspace zero(uint32_t p, uint32_t ncols) { return {p, ncols, {}}; }

  uint32_t dim() const { return uint32_t(basis.size()); }
  bool contains(const FpVec& v) const;
  bool contains(const FpSubspace& other) const;
  FpSubspace sum(const FpSubspace& other) const;
  bool operator==(const FpSubspace& o) const = default;
};

}  // namespace sl2lab
