#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adic/matrix.hpp"
#include "adic/ring.hpp"

namespace adic {

/// a-adic order of a truncated series. A series that vanishes at precision N
/// only has order known to be >= N+1; `at_least` marks that sentinel.
struct AdicOrder {
  int value = 0;
  bool at_least = false;
  bool operator==(const AdicOrder&) const = default;
};

/// Element of k[[x_1..x_n]] known modulo m^{N+1}. Sparse over the graded-lex
/// basis; zero coefficients are never stored.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(Ring ring) : ring_(std::move(ring)) {}

  static TruncatedSeries zero(const Ring& ring) { return TruncatedSeries(ring); }
  static TruncatedSeries constant(const Ring& ring, int64_t c);
  static TruncatedSeries variable(const Ring& ring, int i);
  static TruncatedSeries monomial(const Ring& ring, const Monomial& m, int64_t c = 1);

  const Ring& ring() const { return ring_; }
  const std::map<size_t, uint32_t>& terms() const { return terms_; }
  uint32_t coeff(size_t basis_index) const;
  void set_coeff(size_t basis_index, uint32_t c);
  bool is_zero() const { return terms_.empty(); }
  bool is_unit() const { return coeff(0) != 0; }

  AdicOrder ord() const;
  TruncatedSeries truncated(int k) const;
  TruncatedSeries scaled(uint32_t c) const;
  /// Multiplication by this series on A_k, dim(A_k) square.
  MatrixK action(int k) const;

  bool operator==(const TruncatedSeries& o) const { return terms_ == o.terms_; }

 private:
  Ring ring_;
  std::map<size_t, uint32_t> terms_;
};

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries operator-(const TruncatedSeries& f);
TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries power(const TruncatedSeries& f, int e);
/// Multiplicative inverse of a unit, to precision N.
TruncatedSeries unit_inverse(const TruncatedSeries& f);

/// Matrix over the truncated power series ring; column j is the image of
/// the j-th generator.
class SeriesMatrix {
 public:
  SeriesMatrix(Ring ring, size_t rows, size_t cols);

  static SeriesMatrix identity(const Ring& ring, size_t n);

  const Ring& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const TruncatedSeries& operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
  TruncatedSeries& operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  /// Realization as a map A_k^cols -> A_k^rows in generator-major coordinates.
  MatrixK level_matrix(int k) const;
  /// Residue matrix over A_0 = k.
  MatrixK constant_part() const;

  bool operator==(const SeriesMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  Ring ring_;
  size_t rows_, cols_;
  std::vector<TruncatedSeries> entries_;
};

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix scaled(const SeriesMatrix& a, int64_t c);
SeriesMatrix transpose(const SeriesMatrix& a);
SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix hstack(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix block_diag(const std::vector<SeriesMatrix>& parts, const Ring& ring);
/// Lift of a level-k coordinate matrix (generator-major) to a series matrix.
SeriesMatrix series_from_level(const Ring& ring, const MatrixK& m, int k, size_t rows, size_t cols);
/// Inverse of a square matrix invertible modulo m, to precision N.
SeriesMatrix series_inverse(const SeriesMatrix& a);

}  // namespace adic
