#include "adic/matrix.hpp"

#include <cassert>
#include <utility>

#include "adic/error.hpp"

namespace adic {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ConfigMismatch: return "config-mismatch";
    case ErrorKind::PrecisionExceeded: return "precision-exceeded";
    case ErrorKind::PreconditionFailed: return "precondition-failed";
    case ErrorKind::Undetermined: return "undetermined";
    case ErrorKind::NotCofinite: return "not-cofinite";
  }
  return "unknown";
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
  require(a % p != 0, ErrorKind::InvalidInput, "inverse of zero in F_p");
  uint64_t result = 1, base = a % p;
  uint32_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

uint32_t fp_reduce(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  return static_cast<uint32_t>(r < 0 ? r + p : r);
}

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

MatrixK MatrixK::identity(uint32_t p, size_t n) {
  MatrixK m(p, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixK MatrixK::from_rows(uint32_t p, const std::vector<std::vector<int64_t>>& rows) {
  size_t nc = rows.empty() ? 0 : rows.front().size();
  MatrixK m(p, rows.size(), nc);
  for (size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorKind::InvalidInput, "ragged matrix rows");
    for (size_t c = 0; c < nc; ++c) m(r, c) = fp_reduce(rows[r][c], p);
  }
  return m;
}

MatrixK MatrixK::column(size_t c) const {
  MatrixK out(p_, rows_, 1);
  for (size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

MatrixK MatrixK::select_columns(std::span<const size_t> idx) const {
  MatrixK out(p_, rows_, idx.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t j = 0; j < idx.size(); ++j) out(r, j) = (*this)(r, idx[j]);
  return out;
}

MatrixK MatrixK::select_rows(std::span<const size_t> idx) const {
  MatrixK out(p_, idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(idx[i], c);
  return out;
}

MatrixK MatrixK::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  assert(r0 + nr <= rows_ && c0 + nc <= cols_);
  MatrixK out(p_, nr, nc);
  for (size_t r = 0; r < nr; ++r)
    for (size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void MatrixK::set_block(size_t r0, size_t c0, const MatrixK& b) {
  assert(r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_);
  for (size_t r = 0; r < b.rows(); ++r)
    for (size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

bool MatrixK::is_zero() const {
  for (auto v : data_)
    if (v) return false;
  return true;
}

bool MatrixK::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

MatrixK operator*(const MatrixK& a, const MatrixK& b) {
  require(a.cols() == b.rows(), ErrorKind::InvalidInput, "matrix product extent mismatch");
  const uint32_t p = a.prime();
  MatrixK out(p, a.rows(), b.cols());
  std::vector<uint64_t> acc(b.cols());
  // Accumulate in 64 bits and reduce lazily; p < 2^31 keeps 3 products safe.
  const uint64_t limit = ~uint64_t{0} - static_cast<uint64_t>(p - 1) * (p - 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const uint32_t* arow = a.row_ptr(i);
    for (size_t k = 0; k < a.cols(); ++k) {
      const uint64_t av = arow[k];
      if (!av) continue;
      const uint32_t* brow = b.row_ptr(k);
      for (size_t j = 0; j < b.cols(); ++j) {
        if (!brow[j]) continue;
        uint64_t& s = acc[j];
        s += av * brow[j];
        if (s >= limit) s %= p;
      }
    }
    uint32_t* orow = out.row_ptr(i);
    for (size_t j = 0; j < b.cols(); ++j) orow[j] = static_cast<uint32_t>(acc[j] % p);
  }
  return out;
}

MatrixK operator+(const MatrixK& a, const MatrixK& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::InvalidInput,
          "matrix sum extent mismatch");
  MatrixK out(a.prime(), a.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = fp_add(a(r, c), b(r, c), a.prime());
  return out;
}

MatrixK operator-(const MatrixK& a, const MatrixK& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::InvalidInput,
          "matrix difference extent mismatch");
  MatrixK out(a.prime(), a.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(r, c) = fp_sub(a(r, c), b(r, c), a.prime());
  return out;
}

MatrixK operator-(const MatrixK& a) { return scaled(a, a.prime() - 1); }

MatrixK scaled(const MatrixK& a, uint32_t c) {
  MatrixK out(a.prime(), a.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t j = 0; j < a.cols(); ++j) out(r, j) = fp_mul(a(r, j), c % a.prime(), a.prime());
  return out;
}

MatrixK transpose(const MatrixK& a) {
  MatrixK out(a.prime(), a.cols(), a.rows());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

MatrixK hstack(const MatrixK& a, const MatrixK& b) {
  require(a.rows() == b.rows(), ErrorKind::InvalidInput, "hstack row mismatch");
  MatrixK out(a.prime(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

MatrixK hstack(std::span<const MatrixK> parts, uint32_t p, size_t rows) {
  size_t cols = 0;
  for (const auto& m : parts) {
    require(m.rows() == rows, ErrorKind::InvalidInput, "hstack row mismatch");
    cols += m.cols();
  }
  MatrixK out(p, rows, cols);
  size_t c0 = 0;
  for (const auto& m : parts) {
    out.set_block(0, c0, m);
    c0 += m.cols();
  }
  return out;
}

MatrixK vstack(const MatrixK& a, const MatrixK& b) {
  require(a.cols() == b.cols(), ErrorKind::InvalidInput, "vstack column mismatch");
  MatrixK out(a.prime(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

MatrixK block_diag(std::span<const MatrixK> parts, uint32_t p) {
  size_t r = 0, c = 0;
  for (const auto& m : parts) {
    r += m.rows();
    c += m.cols();
  }
  MatrixK out(p, r, c);
  r = c = 0;
  for (const auto& m : parts) {
    out.set_block(r, c, m);
    r += m.rows();
    c += m.cols();
  }
  return out;
}

MatrixK kron(const MatrixK& a, const MatrixK& b) {
  const uint32_t p = a.prime();
  MatrixK out(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const uint32_t av = a(i, j);
      if (!av) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = fp_mul(av, b(k, l), p);
    }
  return out;
}

Rref rref(const MatrixK& m) {
  Rref out;
  out.reduced = m;
  MatrixK& a = out.reduced;
  const uint32_t p = m.prime();
  const size_t rows = a.rows(), cols = a.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      uint32_t* x = a.row_ptr(piv);
      uint32_t* y = a.row_ptr(r);
      for (size_t j = c; j < cols; ++j) std::swap(x[j], y[j]);
    }
    uint32_t* prow = a.row_ptr(r);
    const uint32_t inv = fp_inv(prow[c], p);
    for (size_t j = c; j < cols; ++j) prow[j] = fp_mul(prow[j], inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint32_t* row = a.row_ptr(i);
      const uint32_t f = row[c];
      if (!f) continue;
      const uint64_t nf = p - f;
      for (size_t j = c; j < cols; ++j) {
        if (!prow[j]) continue;
        row[j] = static_cast<uint32_t>((row[j] + nf * prow[j]) % p);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

size_t rank(const MatrixK& m) { return rref(m).rank; }

MatrixK kernel(const MatrixK& m) {
  const Rref rr = rref(m);
  const uint32_t p = m.prime();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  MatrixK out(p, m.cols(), m.cols() - rr.rank);
  size_t k = 0;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    out(f, k) = 1;
    for (size_t r = 0; r < rr.rank; ++r) out(rr.pivots[r], k) = fp_neg(rr.reduced(r, f), p);
    ++k;
  }
  return out;
}

MatrixK column_space(const MatrixK& m) {
  const Rref rr = rref(m);
  return m.select_columns(rr.pivots);
}

std::optional<MatrixK> solve(const MatrixK& a, const MatrixK& b) {
  require(a.rows() == b.rows(), ErrorKind::InvalidInput, "solve extent mismatch");
  const Rref rr = rref(hstack(a, b));
  MatrixK x(a.prime(), a.cols(), b.cols());
  for (size_t r = 0; r < rr.rank; ++r) {
    const size_t pc = rr.pivots[r];
    if (pc >= a.cols()) return std::nullopt;
    for (size_t j = 0; j < b.cols(); ++j) x(pc, j) = rr.reduced(r, a.cols() + j);
  }
  return x;
}

std::optional<MatrixK> inverse(const MatrixK& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Rref rr = rref(hstack(m, MatrixK::identity(m.prime(), m.rows())));
  if (rr.rank < m.rows() || (m.rows() > 0 && rr.pivots[m.rows() - 1] >= m.cols()))
    return std::nullopt;
  return rr.reduced.block(0, m.cols(), m.rows(), m.rows());
}

MatrixK left_inverse(const MatrixK& basis) {
  auto lt = solve(transpose(basis), MatrixK::identity(basis.prime(), basis.cols()));
  require(lt.has_value(), ErrorKind::InvalidInput, "left_inverse: columns are dependent");
  return transpose(*lt);
}

bool in_span(const MatrixK& basis, const MatrixK& vectors) {
  if (vectors.cols() == 0) return true;
  if (basis.cols() == 0) return vectors.is_zero();
  return rank(hstack(basis, vectors)) == rank(basis);
}

bool same_span(const MatrixK& a, const MatrixK& b) {
  const size_t ra = a.cols() ? rank(a) : 0;
  const size_t rb = b.cols() ? rank(b) : 0;
  if (ra != rb) return false;
  if (ra == 0) return true;
  return rank(hstack(a, b)) == ra;
}

QuotientData quotient_by(const MatrixK& sub, size_t dim, uint32_t p) {
  MatrixK indep = sub.cols() ? column_space(sub) : MatrixK(p, dim, 0);
  const size_t w = indep.cols();
  const Rref rr = rref(hstack(indep, MatrixK::identity(p, dim)));
  std::vector<size_t> comp;
  for (auto c : rr.pivots)
    if (c >= w) comp.push_back(c - w);
  MatrixK section(p, dim, comp.size());
  for (size_t j = 0; j < comp.size(); ++j) section(comp[j], j) = 1;
  auto full_inv = inverse(hstack(indep, section));
  require(full_inv.has_value(), ErrorKind::InvalidInput, "quotient_by: complement failed");
  QuotientData q;
  q.project = full_inv->block(w, 0, dim - w, dim);
  q.section = std::move(section);
  return q;
}

}  // namespace adic
