#include "adic/series.hpp"

#include "adic/error.hpp"

namespace adic {

namespace {

void check_same(const Ring& a, const Ring& b) {
  require(a == b, ErrorKind::ConfigMismatch, "series from different ring configurations");
}

}  // namespace

TruncatedSeries TruncatedSeries::constant(const Ring& ring, int64_t c) {
  TruncatedSeries f(ring);
  f.set_coeff(0, fp_reduce(c, ring.p()));
  return f;
}

TruncatedSeries TruncatedSeries::variable(const Ring& ring, int i) {
  require(i >= 0 && i < ring.vars(), ErrorKind::InvalidInput, "variable index out of range");
  TruncatedSeries f(ring);
  if (ring.precision() >= 1) f.set_coeff(ring.variable_index(i), 1);
  return f;
}

TruncatedSeries TruncatedSeries::monomial(const Ring& ring, const Monomial& m, int64_t c) {
  TruncatedSeries f(ring);
  require(static_cast<int>(m.size()) == ring.vars(), ErrorKind::InvalidInput,
          "monomial has wrong number of exponents");
  if (monomial_degree(m) > ring.precision()) return f;
  auto idx = ring.index_of(m);
  require(idx.has_value(), ErrorKind::InvalidInput, "negative exponent in monomial");
  f.set_coeff(*idx, fp_reduce(c, ring.p()));
  return f;
}

uint32_t TruncatedSeries::coeff(size_t basis_index) const {
  auto it = terms_.find(basis_index);
  return it == terms_.end() ? 0 : it->second;
}

void TruncatedSeries::set_coeff(size_t basis_index, uint32_t c) {
  c %= ring_.p();
  if (c == 0)
    terms_.erase(basis_index);
  else
    terms_[basis_index] = c;
}

AdicOrder TruncatedSeries::ord() const {
  if (terms_.empty()) return {ring_.precision() + 1, true};
  return {ring_.degree(terms_.begin()->first), false};
}

TruncatedSeries TruncatedSeries::truncated(int k) const {
  TruncatedSeries out(ring_);
  for (auto [i, c] : terms_)
    if (ring_.degree(i) <= k) out.terms_.emplace(i, c);
  return out;
}

TruncatedSeries TruncatedSeries::scaled(uint32_t c) const {
  TruncatedSeries out(ring_);
  for (auto [i, v] : terms_) out.set_coeff(i, fp_mul(v, c % ring_.p(), ring_.p()));
  return out;
}

MatrixK TruncatedSeries::action(int k) const {
  const size_t dk = ring_.level_dim(k);
  const uint32_t p = ring_.p();
  MatrixK out(p, dk, dk);
  for (auto [m, c] : terms_) {
    if (ring_.degree(m) > k) break;
    for (size_t a = 0; a < dk; ++a) {
      if (ring_.degree(a) + ring_.degree(m) > k) continue;
      const size_t t = *ring_.product_index(a, m);
      out(t, a) = fp_add(out(t, a), c, p);
    }
  }
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_same(f.ring(), g.ring());
  TruncatedSeries out = f;
  for (auto [i, c] : g.terms()) out.set_coeff(i, fp_add(out.coeff(i), c, f.ring().p()));
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& f) { return f.scaled(f.ring().p() - 1); }

TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return f + (-g); }

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_same(f.ring(), g.ring());
  const Ring& ring = f.ring();
  const uint32_t p = ring.p();
  std::map<size_t, uint64_t> acc;
  for (auto [i, a] : f.terms())
    for (auto [j, b] : g.terms()) {
      auto t = ring.product_index(i, j);
      if (!t) continue;
      acc[*t] = (acc[*t] + static_cast<uint64_t>(a) * b) % p;
    }
  TruncatedSeries out(ring);
  for (auto [i, c] : acc) out.set_coeff(i, static_cast<uint32_t>(c));
  return out;
}

TruncatedSeries power(const TruncatedSeries& f, int e) {
  TruncatedSeries out = TruncatedSeries::constant(f.ring(), 1);
  for (int i = 0; i < e; ++i) out = out * f;
  return out;
}

TruncatedSeries unit_inverse(const TruncatedSeries& f) {
  require(f.is_unit(), ErrorKind::InvalidInput, "unit_inverse: series is not a unit");
  const Ring& ring = f.ring();
  // f = c(1 - e) with e in m; inverse = c^{-1} sum e^j, finite at precision N.
  const uint32_t cinv = fp_inv(f.coeff(0), ring.p());
  TruncatedSeries e = TruncatedSeries::constant(ring, 1) - f.scaled(cinv);
  TruncatedSeries sum = TruncatedSeries::constant(ring, 1);
  TruncatedSeries term = sum;
  for (int j = 1; j <= ring.precision(); ++j) {
    term = term * e;
    sum = sum + term;
  }
  return sum.scaled(cinv);
}

SeriesMatrix::SeriesMatrix(Ring ring, size_t rows, size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, TruncatedSeries(ring)) {}

SeriesMatrix SeriesMatrix::identity(const Ring& ring, size_t n) {
  SeriesMatrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = TruncatedSeries::constant(ring, 1);
  return m;
}

bool SeriesMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

MatrixK SeriesMatrix::level_matrix(int k) const {
  const size_t dk = ring_.level_dim(k);
  MatrixK out(ring_.p(), rows_ * dk, cols_ * dk);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) {
      const auto& f = (*this)(r, c);
      if (f.is_zero()) continue;
      out.set_block(r * dk, c * dk, f.action(k));
    }
  return out;
}

MatrixK SeriesMatrix::constant_part() const {
  MatrixK out(ring_.p(), rows_, cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).coeff(0);
  return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  require(a.cols() == b.rows(), ErrorKind::InvalidInput, "series matrix product extent mismatch");
  SeriesMatrix out(a.ring(), a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    }
  return out;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::InvalidInput,
          "series matrix sum extent mismatch");
  SeriesMatrix out(a.ring(), a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a + scaled(b, -1);
}

SeriesMatrix scaled(const SeriesMatrix& a, int64_t c) {
  SeriesMatrix out(a.ring(), a.rows(), a.cols());
  const uint32_t cc = fp_reduce(c, a.ring().p());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).scaled(cc);
  return out;
}

SeriesMatrix transpose(const SeriesMatrix& a) {
  SeriesMatrix out(a.ring(), a.cols(), a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesMatrix out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

SeriesMatrix hstack(const SeriesMatrix& a, const SeriesMatrix& b) {
  require(a.rows() == b.rows(), ErrorKind::InvalidInput, "series hstack row mismatch");
  SeriesMatrix out(a.ring(), a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

SeriesMatrix block_diag(const std::vector<SeriesMatrix>& parts, const Ring& ring) {
  size_t r = 0, c = 0;
  for (const auto& m : parts) {
    r += m.rows();
    c += m.cols();
  }
  SeriesMatrix out(ring, r, c);
  r = c = 0;
  for (const auto& m : parts) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) out(r + i, c + j) = m(i, j);
    r += m.rows();
    c += m.cols();
  }
  return out;
}

SeriesMatrix series_from_level(const Ring& ring, const MatrixK& m, int k, size_t rows, size_t cols) {
  const size_t dk = ring.level_dim(k);
  require(m.rows() == rows * dk && m.cols() >= cols * dk, ErrorKind::InvalidInput,
          "series_from_level: extent mismatch");
  // Column (g, monomial 1) holds the image of generator g.
  SeriesMatrix out(ring, rows, cols);
  for (size_t c = 0; c < cols; ++c)
    for (size_t r = 0; r < rows; ++r)
      for (size_t a = 0; a < dk; ++a) {
        const uint32_t v = m(r * dk + a, c * dk);
        if (v) out(r, c).set_coeff(a, v);
      }
  return out;
}

SeriesMatrix series_inverse(const SeriesMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidInput, "series_inverse: not square");
  const Ring& ring = a.ring();
  auto c0inv = inverse(a.constant_part());
  require(c0inv.has_value(), ErrorKind::InvalidInput, "series_inverse: not invertible mod m");
  SeriesMatrix u = series_from_level(ring, *c0inv, 0, a.rows(), a.cols());
  // a * u = I - e with e in m; inverse = u * sum e^j.
  SeriesMatrix e = SeriesMatrix::identity(ring, a.rows()) - a * u;
  SeriesMatrix sum = SeriesMatrix::identity(ring, a.rows());
  SeriesMatrix term = sum;
  for (int j = 1; j <= ring.precision(); ++j) {
    term = term * e;
    sum = sum + term;
  }
  return u * sum;
}

}  // namespace adic
