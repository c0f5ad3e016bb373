#include "sl2lab/fp_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace sl2lab {

FpMat FpMat::identity(uint32_t p, uint32_t n) {
  FpMat m(p, n, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpVec FpMat::apply(const FpVec& v) const {
  if (v.size() != cols) throw ParamError("FpMat::apply: size mismatch");
  FpVec r(rows, 0);
  for (uint32_t i = 0; i < rows; ++i) {
    uint32_t acc = 0;
    const uint8_t* row = &data[size_t(i) * cols];
    for (uint32_t j = 0; j < cols; ++j) acc += uint32_t(row[j]) * v[j];
    r[i] = uint8_t(acc % p);
  }
  return r;
}

FpMat FpMat::operator*(const FpMat& o) const {
  if (cols != o.rows || p != o.p) throw ParamError("FpMat::operator*: shape mismatch");
  FpMat r(p, rows, o.cols);
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t k = 0; k < cols; ++k) {
      uint8_t x = at(i, k);
      if (!x) continue;
      const uint8_t* src = &o.data[size_t(k) * o.cols];
      uint8_t* dst = &r.data[size_t(i) * o.cols];
      for (uint32_t j = 0; j < o.cols; ++j) dst[j] = uint8_t((dst[j] + x * src[j]) % p);
    }
  return r;
}

FpMat FpMat::pow(uint64_t e) const {
  if (rows != cols) throw ParamError("FpMat::pow: square matrix required");
  FpMat r = identity(p, rows), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FpMat kronecker(const FpMat& a, const FpMat& b) {
  if (a.p != b.p) throw ParamError("kronecker: field mismatch");
  FpMat r(a.p, a.rows * b.rows, a.cols * b.cols);
  for (uint32_t i = 0; i < a.rows; ++i)
    for (uint32_t j = 0; j < a.cols; ++j) {
      uint8_t x = a.at(i, j);
      if (!x) continue;
      for (uint32_t k = 0; k < b.rows; ++k)
        for (uint32_t l = 0; l < b.cols; ++l)
          r.at(i * b.rows + k, j * b.cols + l) = uint8_t((x * b.at(k, l)) % a.p);
    }
  return r;
}

RowReducer::RowReducer(uint32_t p, uint32_t ncols)
    : p_(p), ncols_(ncols), row_of_col_(ncols, -1), scratch_(ncols, 0) {}

void RowReducer::load_scratch(const FpVec& v) const {
  for (uint32_t j = 0; j < ncols_; ++j) scratch_[j] = v[j];
}

int32_t RowReducer::eliminate() const {
  int32_t first_free = -1;
  for (uint32_t c = 0; c < ncols_; ++c) {
    int32_t x = scratch_[c] % int32_t(p_);
    if (x < 0) x += p_;
    scratch_[c] = x;
    if (x == 0) continue;
    int32_t r = row_of_col_[c];
    if (r < 0) {
      if (first_free < 0) first_free = int32_t(c);
      continue;
    }
    const uint8_t* row = rows_[r].data();
    for (uint32_t j = c; j < ncols_; ++j) scratch_[j] -= x * row[j];
  }
  return first_free;
}

bool RowReducer::add(const FpVec& v) {
  if (v.size() != ncols_) throw ParamError("RowReducer::add: size mismatch");
  load_scratch(v);
  int32_t pc = eliminate();
  if (pc < 0) return false;
  FpVec row(ncols_, 0);
  uint32_t inv = inv_mod(uint32_t(scratch_[pc]), p_);
  for (uint32_t j = uint32_t(pc); j < ncols_; ++j) {
    int32_t x = scratch_[j] % int32_t(p_);
    if (x < 0) x += p_;
    row[j] = uint8_t((uint64_t(x) * inv) % p_);
  }
  row_of_col_[pc] = int32_t(rows_.size());
  rows_.push_back(std::move(row));
  pivot_of_row_.push_back(uint32_t(pc));
  return true;
}

bool RowReducer::add_sparse(const std::vector<std::pair<uint64_t, uint8_t>>& v) {
  FpVec dense(ncols_, 0);
  for (auto& [i, x] : v) dense[i] = uint8_t((dense[i] + x) % p_);
  return add(dense);
}

FpVec RowReducer::reduce(const FpVec& v) const {
  load_scratch(v);
  eliminate();
  FpVec r(ncols_, 0);
  for (uint32_t j = 0; j < ncols_; ++j) {
    int32_t x = scratch_[j] % int32_t(p_);
    if (x < 0) x += p_;
    r[j] = uint8_t(x);
  }
  return r;
}

bool RowReducer::contains(const FpVec& v) const {
  load_scratch(v);
  return eliminate() < 0;
}

std::vector<FpVec> RowReducer::canonical() const {
  // Back-substitute: order rows by pivot, clear entries above each pivot.
  std::vector<uint32_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](uint32_t x, uint32_t y) { return pivot_of_row_[x] < pivot_of_row_[y]; });
  std::vector<FpVec> out;
  out.reserve(rows_.size());
  for (uint32_t r : order) out.push_back(rows_[r]);
  std::vector<uint32_t> pivs;
  pivs.reserve(rows_.size());
  for (uint32_t r : order) pivs.push_back(pivot_of_row_[r]);
  for (size_t i = out.size(); i-- > 0;) {
    for (size_t k = 0; k < i; ++k) {
      uint8_t x = out[k][pivs[i]];
      if (!x) continue;
      uint8_t neg = uint8_t((p_ - x) % p_);
      const FpVec& src = out[i];
      FpVec& dst = out[k];
      for (uint32_t j = pivs[i]; j < ncols_; ++j)
        dst[j] = uint8_t((dst[j] + neg * src[j]) % p_);
    }
  }
  return out;
}

std::vector<FpVec> kernel_basis(const FpMat& m) {
  RowReducer red(m.p, m.cols);
  for (uint32_t i = 0; i < m.rows; ++i)
    red.add(FpVec(m.data.begin() + size_t(i) * m.cols, m.data.begin() + size_t(i + 1) * m.cols));
  auto rref = red.canonical();
  const auto& roc = red.pivot_of_col();
  std::vector<uint32_t> pivs;
  for (uint32_t c = 0; c < m.cols; ++c)
    if (roc[c] >= 0) pivs.push_back(c);
  // Map each pivot column to its canonical row index.
  std::vector<FpVec> out;
  for (uint32_t c = 0; c < m.cols; ++c) {
    if (roc[c] >= 0) continue;
    FpVec v(m.cols, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivs.size(); ++r) {
      uint8_t x = rref[r][c];
      if (x) v[pivs[r]] = uint8_t((m.p - x) % m.p);
    }
    out.push_back(std::move(v));
  }
  return out;
}

uint32_t rank(const FpMat& m) {
  RowReducer red(m.p, m.cols);
  for (uint32_t i = 0; i < m.rows; ++i) {
    red.add(FpVec(m.data.begin() + size_t(i) * m.cols, m.data.begin() + size_t(i + 1) * m.cols));
    if (red.full()) break;
  }
  return red.rank();
}

bool is_invertible(const FpMat& m) { return m.rows == m.cols && rank(m) == m.rows; }

FpMat inverse(const FpMat& m) {
  if (m.rows != m.cols) throw DomainError("inverse: square matrix required");
  uint32_t n = m.rows;
  // Reduce [M | I] where rows are equations; we invert via column ops on
  // the augmented RREF, i.e. standard Gauss-Jordan.
  RowReducer red(m.p, 2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    FpVec v(2 * n, 0);
    for (uint32_t j = 0; j < n; ++j) v[j] = m.at(i, j);
    v[n + i] = 1;
    red.add(v);
  }
  // Invertible iff every column of the left block is a pivot column.
  const auto& roc = red.pivot_of_col();
  for (uint32_t j = 0; j < n; ++j)
    if (roc[j] < 0) throw DomainError("inverse: singular matrix");
  auto rref = red.canonical();
  FpMat out(m.p, n, n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) out.at(i, j) = rref[i][n + j];
  }
  return out;
}

FpSubspace FpSubspace::from_vectors(uint32_t p, uint32_t ncols, const std::vector<FpVec>& vecs) {
  RowReducer red(p, ncols);
  for (const auto& v : vecs) red.add(v);
  return {p, ncols, red.canonical()};
}

bool FpSubspace::contains(const FpVec& v) const {
  RowReducer red(p, ncols);
  for (const auto& b : basis) red.add(b);
  return red.contains(v);
}

bool FpSubspace::contains(const FpSubspace& other) const {
  RowReducer red(p, ncols);
  for (const auto& b : basis) red.add(b);
  for (const auto& v : other.basis)
    if (!red.contains(v)) return false;
  return true;
}

FpSubspace FpSubspace::sum(const FpSubspace& other) const {
  if (p != other.p || ncols != other.ncols) throw ParamError("FpSubspace::sum: shape mismatch");
  RowReducer red(p, ncols);
  for (const auto& b : basis) red.add(b);
  for (const auto& b : other.basis) red.add(b);
  return {p, ncols, red.canonical()};
}

}  // namespace sl2lab
