#include "adic/level_module.hpp"

#include <random>
#include <string>

#include "adic/error.hpp"

namespace adic {

LevelModule::LevelModule(Ring ring, int level, size_t dim, std::vector<MatrixK> actions)
    : ring_(std::move(ring)), level_(level), dim_(dim), actions_(std::move(actions)) {
  require(level_ >= 0 && level_ <= ring_.precision(), ErrorKind::PrecisionExceeded,
          "level module at level " + std::to_string(level_) + " exceeds precision");
  require(static_cast<int>(actions_.size()) == ring_.vars(), ErrorKind::InvalidInput,
          "level module needs one action per variable");
  for (const auto& x : actions_)
    require(x.rows() == dim_ && x.cols() == dim_, ErrorKind::InvalidInput,
            "action matrix extents do not match module dimension");
}

LevelModule LevelModule::zero(const Ring& ring, int level) {
  return LevelModule(ring, level, 0, std::vector<MatrixK>(ring.vars(), MatrixK(ring.p(), 0, 0)));
}

LevelModule LevelModule::free(const Ring& ring, int level, size_t rank) {
  std::vector<MatrixK> acts;
  for (int i = 0; i < ring.vars(); ++i) {
    std::vector<MatrixK> blocks(rank, ring.variable_action(i, level));
    acts.push_back(block_diag(blocks, ring.p()));
  }
  return LevelModule(ring, level, rank * ring.level_dim(level), std::move(acts));
}

LevelModule LevelModule::residue_field(const Ring& ring, int level) {
  return LevelModule(ring, level, 1, std::vector<MatrixK>(ring.vars(), MatrixK(ring.p(), 1, 1)));
}

std::vector<MatrixK> LevelModule::monomial_actions() const {
  const size_t count = ring_.level_dim(level_);
  std::vector<MatrixK> out;
  out.reserve(count);
  out.push_back(MatrixK::identity(p(), dim_));
  for (size_t idx = 1; idx < count; ++idx) {
    Monomial m = ring_.monomial(idx);
    int v = 0;
    while (m[v] == 0) ++v;
    m[v] -= 1;
    out.push_back(actions_[v] * out[*ring_.index_of(m)]);
  }
  return out;
}

MatrixK LevelModule::series_action(const TruncatedSeries& f) const {
  require(f.ring() == ring_, ErrorKind::ConfigMismatch, "series_action: ring mismatch");
  MatrixK out(p(), dim_, dim_);
  if (f.is_zero() || dim_ == 0) return out;
  const auto mons = monomial_actions();
  for (auto [idx, c] : f.terms()) {
    if (ring_.degree(idx) > level_) break;
    out = out + scaled(mons[idx], c);
  }
  return out;
}

MatrixK LevelModule::ideal_power_image(int e) const {
  if (e <= 0) return MatrixK::identity(p(), dim_);
  if (e > level_) return MatrixK(p(), dim_, 0);
  const auto mons = monomial_actions();
  std::vector<MatrixK> parts;
  for (size_t idx = 0; idx < mons.size(); ++idx)
    if (ring_.degree(idx) == e) parts.push_back(mons[idx]);
  return column_space(hstack(parts, p(), dim_));
}

bool LevelModule::killed_by_power(int e) const {
  if (dim_ == 0) return true;
  if (e <= 0) return false;
  if (e <= level_) return ideal_power_image(e).cols() == 0;
  return true;
}

LevelModule LevelModule::relabeled(int level) const {
  require(killed_by_power(level + 1), ErrorKind::InvalidInput,
          "relabeled: module is not killed by m^" + std::to_string(level + 1));
  return LevelModule(ring_, level, dim_, actions_);
}

void LevelModule::validate() const {
  for (size_t i = 0; i < actions_.size(); ++i)
    for (size_t j = i + 1; j < actions_.size(); ++j)
      require(actions_[i] * actions_[j] == actions_[j] * actions_[i], ErrorKind::InvalidInput,
              "level module actions do not commute");
  if (dim_ == 0) return;
  const auto mons = monomial_actions();
  for (size_t idx = 0; idx < mons.size(); ++idx) {
    if (ring_.degree(idx) != level_) continue;
    for (const auto& x : actions_)
      require((x * mons[idx]).is_zero(), ErrorKind::InvalidInput,
              "m^{k+1} does not act as zero on level module");
  }
}

bool LevelModule::is_linear_map_from(const LevelModule& src, const MatrixK& f) const {
  if (f.rows() != dim_ || f.cols() != src.dim()) return false;
  for (size_t i = 0; i < actions_.size(); ++i)
    if (!(actions_[i] * f == f * src.action(static_cast<int>(i)))) return false;
  return true;
}

void LevelMap::validate() const {
  require(source.level() == target.level(), ErrorKind::InvalidInput, "level map across levels");
  require(target.is_linear_map_from(source, matrix), ErrorKind::InvalidInput,
          "level map is not A_k-linear");
}

MatrixK generated_submodule(const LevelModule& v, const MatrixK& gens) {
  if (gens.cols() == 0) return MatrixK(v.p(), v.dim(), 0);
  const auto mons = v.monomial_actions();
  std::vector<MatrixK> parts;
  parts.reserve(mons.size());
  for (const auto& x : mons) parts.push_back(x * gens);
  return column_space(hstack(parts, v.p(), v.dim()));
}

Submodule submodule(const LevelModule& v, const MatrixK& spanning) {
  MatrixK basis = spanning.cols() ? column_space(spanning) : MatrixK(v.p(), v.dim(), 0);
  MatrixK retr = left_inverse(basis);
  std::vector<MatrixK> acts;
  for (const auto& x : v.actions()) {
    MatrixK image = x * basis;
    MatrixK a = retr * image;
    require(basis * a == image, ErrorKind::InvalidInput, "submodule: subspace is not invariant");
    acts.push_back(std::move(a));
  }
  return {LevelModule(v.ring(), v.level(), basis.cols(), std::move(acts)), basis, retr};
}

Quotient quotient(const LevelModule& v, const MatrixK& spanning) {
  QuotientData q = quotient_by(spanning, v.dim(), v.p());
  std::vector<MatrixK> acts;
  for (const auto& x : v.actions()) acts.push_back(q.project * x * q.section);
  return {LevelModule(v.ring(), v.level(), q.section.cols(), std::move(acts)), q.project,
          q.section};
}

Subquotient subquotient(const LevelModule& v, const MatrixK& upper, const MatrixK& lower) {
  Submodule u = submodule(v, upper);
  Quotient q = quotient(u.module, u.retraction * lower);
  return {q.module, u.inclusion * q.section, q.projection * u.retraction};
}

LevelModule direct_sum(const std::vector<LevelModule>& parts) {
  require(!parts.empty(), ErrorKind::InvalidInput, "direct_sum of nothing");
  const Ring& ring = parts.front().ring();
  size_t dim = 0;
  for (const auto& m : parts) {
    require(m.level() == parts.front().level(), ErrorKind::InvalidInput, "direct_sum across levels");
    dim += m.dim();
  }
  std::vector<MatrixK> acts;
  for (int i = 0; i < ring.vars(); ++i) {
    std::vector<MatrixK> blocks;
    for (const auto& m : parts) blocks.push_back(m.action(i));
    acts.push_back(block_diag(blocks, ring.p()));
  }
  return LevelModule(ring, parts.front().level(), dim, std::move(acts));
}

LevelModule dual(const LevelModule& m) {
  std::vector<MatrixK> acts;
  for (const auto& x : m.actions()) acts.push_back(transpose(x));
  return LevelModule(m.ring(), m.level(), m.dim(), std::move(acts));
}

Quotient module_from_level_presentation(const Ring& ring, int k, const SeriesMatrix& relations,
                                        size_t rank) {
  require(relations.rows() == rank, ErrorKind::InvalidInput,
          "presentation: relation matrix has " + std::to_string(relations.rows()) +
              " rows, expected rank " + std::to_string(rank));
  LevelModule f = LevelModule::free(ring, k, rank);
  const size_t dk = ring.level_dim(k);
  MatrixK rel = relations.level_matrix(k);
  std::vector<size_t> gen_cols;
  for (size_t j = 0; j < relations.cols(); ++j) gen_cols.push_back(j * dk);
  MatrixK gens = rel.select_columns(gen_cols);
  return quotient(f, generated_submodule(f, gens));
}

Submodule map_kernel(const LevelMap& f) { return submodule(f.source, kernel(f.matrix)); }

Quotient map_cokernel(const LevelMap& f) { return quotient(f.target, f.matrix); }

Image map_image(const LevelMap& f) {
  Submodule s = submodule(f.target, f.matrix);
  return {s, s.retraction * f.matrix};
}

TensorProduct tensor_level(const LevelModule& m, const LevelModule& n) {
  require(m.level() == n.level(), ErrorKind::InvalidInput, "tensor_level: level mismatch");
  const uint32_t p = m.p();
  const MatrixK im = MatrixK::identity(p, m.dim()), in = MatrixK::identity(p, n.dim());
  std::vector<MatrixK> rels, acts;
  for (int i = 0; i < m.ring().vars(); ++i) {
    MatrixK left = kron(m.action(i), in);
    rels.push_back(left - kron(im, n.action(i)));
    acts.push_back(std::move(left));
  }
  LevelModule big(m.ring(), m.level(), m.dim() * n.dim(), std::move(acts));
  Quotient q = quotient(big, hstack(rels, p, big.dim()));
  return {q.module, q.projection, q.section};
}

MatrixK tensor_maps(const MatrixK& f, const MatrixK& g, const TensorProduct& src,
                    const TensorProduct& dst) {
  return dst.project * kron(f, g) * src.section;
}

MatrixK HomModule::to_matrix(const MatrixK& coords) const {
  require(coords.rows() == basis.size() && coords.cols() == 1, ErrorKind::InvalidInput,
          "hom coordinates have wrong extent");
  if (basis.empty()) return MatrixK();
  MatrixK out(basis.front().prime(), basis.front().rows(), basis.front().cols());
  for (size_t b = 0; b < basis.size(); ++b)
    if (coords(b, 0)) out = out + scaled(basis[b], coords(b, 0));
  return out;
}

namespace {

// vec(F) is column-major: index col * rows + row.
MatrixK vec_basis_to_matrix(const MatrixK& v, size_t rows, size_t cols) {
  MatrixK f(v.prime(), rows, cols);
  for (size_t c = 0; c < cols; ++c)
    for (size_t r = 0; r < rows; ++r) f(r, c) = v(c * rows + r, 0);
  return f;
}

}  // namespace

HomModule hom_level(const LevelModule& m, const LevelModule& n) {
  require(m.level() == n.level(), ErrorKind::InvalidInput, "hom_level: level mismatch");
  const uint32_t p = m.p();
  const size_t a = m.dim(), b = n.dim();
  const int nv = m.ring().vars();
  HomModule out{LevelModule::zero(m.ring(), m.level()), {}};
  if (a == 0 || b == 0) return out;
  const MatrixK ia = MatrixK::identity(p, a), ib = MatrixK::identity(p, b);
  std::vector<MatrixK> left;
  MatrixK eqs(p, 0, a * b);
  for (int i = 0; i < nv; ++i) {
    left.push_back(kron(ia, n.action(i)));
    eqs = vstack(eqs, left.back() - kron(transpose(m.action(i)), ib));
  }
  MatrixK sol = kernel(eqs);
  if (sol.cols() == 0) return out;
  MatrixK retr = left_inverse(sol);
  std::vector<MatrixK> acts;
  for (int i = 0; i < nv; ++i) acts.push_back(retr * (left[i] * sol));
  out.module = LevelModule(m.ring(), m.level(), sol.cols(), std::move(acts));
  for (size_t c = 0; c < sol.cols(); ++c) out.basis.push_back(vec_basis_to_matrix(sol.column(c), b, a));
  return out;
}

Quotient base_change(const LevelModule& m, int k) {
  require(k >= 0 && k < m.level(), ErrorKind::InvalidInput, "base_change: need 0 <= k < level");
  Quotient q = quotient(m, m.ideal_power_image(k + 1));
  q.module = q.module.relabeled(k);
  return q;
}

std::optional<MatrixK> find_isomorphism(const LevelModule& m, const LevelModule& n) {
  if (m.dim() != n.dim() || m.level() != n.level()) return std::nullopt;
  const uint32_t p = m.p();
  if (m.dim() == 0) return MatrixK(p, 0, 0);
  HomModule h = hom_level(m, n);
  if (h.basis.empty()) return std::nullopt;
  auto invertible = [&](const MatrixK& f) { return rank(f) == f.rows(); };
  std::mt19937_64 rng(0x6d61746c6973ULL);
  for (int attempt = 0; attempt < 4; ++attempt) {
    MatrixK c(p, h.basis.size(), 1);
    for (size_t i = 0; i < h.basis.size(); ++i) c(i, 0) = static_cast<uint32_t>(rng() % p);
    MatrixK f = h.to_matrix(c);
    if (invertible(f)) return f;
  }
  // Deterministic fallback: single basis elements, then running partial sums.
  MatrixK acc(p, n.dim(), m.dim());
  for (const auto& f : h.basis) {
    if (invertible(f)) return f;
    acc = acc + f;
    if (invertible(acc)) return acc;
  }
  return std::nullopt;
}

}  // namespace adic
