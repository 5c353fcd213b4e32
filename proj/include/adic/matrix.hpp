#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace adic {

// Arithmetic in F_p for p < 2^31.
inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}
inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }
uint32_t fp_inv(uint32_t a, uint32_t p);
uint32_t fp_reduce(int64_t v, uint32_t p);
bool is_prime(uint32_t p);

/// Dense row-major matrix over F_p.
class MatrixK {
 public:
  MatrixK() = default;
  MatrixK(uint32_t p, size_t rows, size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static MatrixK identity(uint32_t p, size_t n);
  static MatrixK from_rows(uint32_t p, const std::vector<std::vector<int64_t>>& rows);

  uint32_t prime() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint32_t operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  uint32_t& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const uint32_t* row_ptr(size_t r) const { return data_.data() + r * cols_; }
  uint32_t* row_ptr(size_t r) { return data_.data() + r * cols_; }
  const std::vector<uint32_t>& data() const { return data_; }

  MatrixK column(size_t c) const;
  MatrixK select_columns(std::span<const size_t> idx) const;
  MatrixK select_rows(std::span<const size_t> idx) const;
  MatrixK block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const MatrixK& b);

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const MatrixK& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  uint32_t p_ = 2;
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<uint32_t> data_;
};

MatrixK operator*(const MatrixK& a, const MatrixK& b);
MatrixK operator+(const MatrixK& a, const MatrixK& b);
MatrixK operator-(const MatrixK& a, const MatrixK& b);
MatrixK operator-(const MatrixK& a);
MatrixK scaled(const MatrixK& a, uint32_t c);
MatrixK transpose(const MatrixK& a);
MatrixK hstack(const MatrixK& a, const MatrixK& b);
MatrixK hstack(std::span<const MatrixK> parts, uint32_t p, size_t rows);
MatrixK vstack(const MatrixK& a, const MatrixK& b);
MatrixK block_diag(std::span<const MatrixK> parts, uint32_t p);
MatrixK kron(const MatrixK& a, const MatrixK& b);

struct Rref {
  size_t rank = 0;
  std::vector<size_t> pivots;  // pivot column of each nonzero row
  MatrixK reduced;
};

/// Exact reduced row-echelon form over F_p.
Rref rref(const MatrixK& m);
size_t rank(const MatrixK& m);
/// Basis of the null space, one vector per column.
MatrixK kernel(const MatrixK& m);
/// A basis of the column space made of original columns (the pivot columns).
MatrixK column_space(const MatrixK& m);
/// Particular solution of a*x = b with all free variables set to zero.
std::optional<MatrixK> solve(const MatrixK& a, const MatrixK& b);
std::optional<MatrixK> inverse(const MatrixK& m);
/// Left inverse of a matrix with independent columns.
MatrixK left_inverse(const MatrixK& basis);
bool in_span(const MatrixK& basis, const MatrixK& vectors);
/// True when span(a) == span(b) as subspaces of the same ambient space.
bool same_span(const MatrixK& a, const MatrixK& b);

/// Coordinates for V / span(sub) with a chosen complement.
/// project * section = I and project * sub = 0.
struct QuotientData {
  MatrixK project;  // (d - w) x d
  MatrixK section;  // d x (d - w), standard basis vectors
};
QuotientData quotient_by(const MatrixK& sub, size_t dim, uint32_t p);

}  // namespace adic
