#include "adic/fg_complex.hpp"

#include <algorithm>

#include "adic/error.hpp"

namespace adic {

namespace {

int64_t sign_of(int e) { return (e % 2 == 0) ? 1 : -1; }

MatrixK level_diff(const SeriesMatrix& d, const Quotient& from, const Quotient& to, int k) {
  return to.projection * d.level_matrix(k) * from.section;
}

}  // namespace

FgPresentation FgComplex::term(int deg) const {
  return in_range(deg) ? terms[deg - lo] : FgPresentation::free(ring, 0);
}

SeriesMatrix FgComplex::diff(int deg) const {
  if (deg >= lo && deg < hi()) return diffs[deg - lo];
  return SeriesMatrix(ring, term(deg + 1).rank, term(deg).rank);
}

bool FgComplex::all_free() const {
  return std::all_of(terms.begin(), terms.end(), [](const FgPresentation& t) { return t.is_free(); });
}

void FgComplex::validate() const {
  require(diffs.size() + 1 == terms.size() || (terms.empty() && diffs.empty()), ErrorKind::InvalidInput,
          "fg complex: need one differential between consecutive terms");
  const int n_top = ring.precision();
  std::vector<Quotient> qs = level_quotients(n_top);
  for (int d = lo; d < hi(); ++d) {
    const std::string at = " in degree " + std::to_string(d);
    const SeriesMatrix& f = diffs[d - lo];
    require(f.rows() == term(d + 1).rank && f.cols() == term(d).rank, ErrorKind::InvalidInput,
            "fg complex: differential extents" + at);
    const Quotient& src = qs[d - lo];
    const Quotient& dst = qs[d - lo + 1];
    const MatrixK fn = f.level_matrix(n_top);
    require((dst.projection * fn * kernel(src.projection)).is_zero(), ErrorKind::InvalidInput,
            "fg complex: differential does not respect relations" + at);
    if (d + 1 < hi()) {
      const Quotient& dst2 = qs[d - lo + 2];
      require((dst2.projection * diffs[d - lo + 1].level_matrix(n_top) * fn).is_zero(),
              ErrorKind::InvalidInput, "fg complex: d o d != 0" + at);
    }
  }
}

std::vector<Quotient> FgComplex::level_quotients(int k) const {
  std::vector<Quotient> qs;
  for (const auto& t : terms) qs.push_back(t.level(k));
  return qs;
}

LevelComplex FgComplex::level(int k) const {
  std::vector<Quotient> qs = level_quotients(k);
  LevelComplex out{ring, k, lo, {}, {}};
  for (const auto& q : qs) out.terms.push_back(q.module);
  for (int d = lo; d < hi(); ++d)
    out.diffs.push_back(level_diff(diffs[d - lo], qs[d - lo], qs[d - lo + 1], k));
  return out;
}

LevelComplex level_of(const FgComplex& c, int k) { return c.level(k); }

FgComplex make_fg_complex(const Ring& ring, int lo, std::vector<FgPresentation> terms,
                          std::vector<SeriesMatrix> diffs) {
  FgComplex c{ring, lo, std::move(terms), std::move(diffs)};
  c.validate();
  return c;
}

FgComplex single_presentation(const FgPresentation& m, int degree) {
  return FgComplex{m.ring(), degree, {m}, {}};
}

FgComplex direct_sum(const FgComplex& a, const FgComplex& b) {
  if (a.terms.empty()) return b;
  if (b.terms.empty()) return a;
  const int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
  FgComplex out{a.ring, lo, {}, {}};
  for (int d = lo; d <= hi; ++d) {
    out.terms.push_back(direct_sum(a.term(d), b.term(d)));
    if (d < hi) out.diffs.push_back(block_diag({a.diff(d), b.diff(d)}, a.ring));
  }
  return out;
}

FgComplex tensor(const FgComplex& a, const FgComplex& b) {
  const Ring& ring = a.ring;
  if (a.terms.empty() || b.terms.empty()) return FgComplex{ring, 0, {}, {}};
  const int lo = a.lo + b.lo, hi = a.hi() + b.hi();
  FgComplex out{ring, lo, {}, {}};
  std::map<std::pair<int, int>, size_t> offset;
  std::vector<size_t> ranks;
  for (int t = lo; t <= hi; ++t) {
    std::optional<FgPresentation> term;
    size_t off = 0;
    for (int p = a.lo; p <= a.hi(); ++p) {
      const int q = t - p;
      if (!b.in_range(q)) continue;
      FgPresentation piece = tensor(a.term(p), b.term(q));
      offset[{p, q}] = off;
      off += piece.rank;
      term = term ? direct_sum(*term, piece) : piece;
    }
    out.terms.push_back(term ? *term : FgPresentation::free(ring, 0));
    ranks.push_back(off);
  }
  for (int t = lo; t < hi; ++t) {
    SeriesMatrix d(ring, ranks[t + 1 - lo], ranks[t - lo]);
    for (int p = a.lo; p <= a.hi(); ++p) {
      const int q = t - p;
      if (!b.in_range(q)) continue;
      const size_t col = offset.at({p, q});
      auto place = [&](const SeriesMatrix& blk, size_t row) {
        for (size_t i = 0; i < blk.rows(); ++i)
          for (size_t j = 0; j < blk.cols(); ++j) d(row + i, col + j) = d(row + i, col + j) + blk(i, j);
      };
      if (a.in_range(p + 1))
        place(kron(a.diff(p), SeriesMatrix::identity(ring, b.term(q).rank)), offset.at({p + 1, q}));
      if (b.in_range(q + 1))
        place(scaled(kron(SeriesMatrix::identity(ring, a.term(p).rank), b.diff(q)), sign_of(p)),
              offset.at({p, q + 1}));
    }
    out.diffs.push_back(std::move(d));
  }
  return out;
}

FgComplex shift(const FgComplex& c, int s) {
  FgComplex out{c.ring, c.lo - s, c.terms, {}};
  for (const auto& d : c.diffs) out.diffs.push_back(scaled(d, sign_of(s)));
  return out;
}

SeriesMatrix FgChainMap::at(int deg) const {
  auto it = maps.find(deg);
  if (it != maps.end()) return it->second;
  return SeriesMatrix(source.ring, target.term(deg).rank, source.term(deg).rank);
}

void FgChainMap::validate() const {
  const int n_top = source.ring.precision();
  const int lo = std::min(source.lo, target.lo), hi = std::max(source.hi(), target.hi());
  for (int d = lo; d <= hi; ++d) {
    Quotient qs = source.term(d).level(n_top), qt = target.term(d).level(n_top);
    require((qt.projection * at(d).level_matrix(n_top) * kernel(qs.projection)).is_zero(),
            ErrorKind::InvalidInput, "fg chain map does not respect relations in degree " + std::to_string(d));
  }
  level(n_top).validate();
}

ChainMap FgChainMap::level(int k) const {
  ChainMap out{source.level(k), target.level(k), {}};
  const int lo = std::min(source.lo, target.lo), hi = std::max(source.hi(), target.hi());
  for (int d = lo; d <= hi; ++d) {
    if (!source.in_range(d) || !target.in_range(d)) continue;
    out.maps[d] = level_diff(at(d), source.term(d).level(k), target.term(d).level(k), k);
  }
  return out;
}

namespace {

// Image in level j of the level-K cycles in degree i.
MatrixK projected_cycles(const FgComplex& c, int i, int j, int kernel_level) {
  const FgPresentation t = c.term(i);
  Quotient qk = t.level(kernel_level);
  Quotient qk1 = c.term(i + 1).level(kernel_level);
  MatrixK z = kernel(level_diff(c.diff(i), qk, qk1, kernel_level));
  Quotient qj = t.level(j);
  MatrixK down = qj.projection * c.ring.free_projection(kernel_level, j, t.rank) * qk.section;
  MatrixK img = down * z;
  return img.cols() ? column_space(img) : MatrixK(c.ring.p(), qj.module.dim(), 0);
}

StableCohomology stable_at(const FgComplex& c, int i, int j, int kernel_level, const MatrixK& cycles) {
  StableCohomology out{i, j, kernel_level, false, c.level(j), Subquotient{LevelModule::zero(c.ring, j), {}, {}}};
  out.h = subquotient(out.complex.term(i), cycles, out.complex.diff(i - 1));
  return out;
}

}  // namespace

StableCohomology stable_cohomology(const FgComplex& c, int i, int j, int kernel_level) {
  require(j >= 0 && j < kernel_level && kernel_level <= c.ring.precision(), ErrorKind::PrecisionExceeded,
          "stable cohomology needs 0 <= level < kernel level <= N");
  StableCohomology out = stable_at(c, i, j, kernel_level, projected_cycles(c, i, j, kernel_level));
  if (kernel_level - 1 > j) {
    MatrixK lower = projected_cycles(c, i, j, kernel_level - 1);
    Subquotient h2 = subquotient(out.complex.term(i), lower, out.complex.diff(i - 1));
    out.stable = h2.module.dim() == out.h.module.dim();
  }
  return out;
}

StableCohomology stable_cohomology(const FgComplex& c, int i, int j) {
  return stable_cohomology(c, i, j, c.ring.precision());
}

TorsionCohomology torsion_cohomology(const FgComplex& c, int i) {
  const int n_top = c.ring.precision();
  require(n_top >= 1, ErrorKind::PrecisionExceeded, "torsion cohomology needs N >= 1");
  std::vector<size_t> dims;
  for (int j = 0; j <= std::max(0, n_top - 2); ++j) dims.push_back(stable_cohomology(c, i, j, n_top).h.module.dim());
  // highest level where kernel levels N and N-1 give the same answer
  int level = -1;
  for (int j = n_top - 2; j >= 0 && level < 0; --j) {
    const MatrixK lower = projected_cycles(c, i, j, n_top - 1);
    const LevelComplex cj = c.level(j);
    if (subquotient(cj.term(i), lower, cj.diff(i - 1)).module.dim() == dims[j]) level = j;
  }
  if (level < 0) return TorsionCohomology{false, stable_cohomology(c, i, 0, n_top), dims};
  const bool plateau = level >= 1 && dims[level] == dims[level - 1];
  return TorsionCohomology{plateau, stable_cohomology(c, i, level, n_top), dims};
}

TorsionCohomology torsion_cohomology_at(const FgComplex& c, int i, int j) {
  StableCohomology v = stable_cohomology(c, i, j);
  const size_t d = v.h.module.dim();
  const bool st = v.stable;
  return TorsionCohomology{st, std::move(v), {d}};
}

FgProfile fg_profile(const FgComplex& c) {
  FgProfile out;
  const int n_top = c.ring.precision();
  require(n_top >= 1, ErrorKind::PrecisionExceeded, "fg_profile needs N >= 1");
  out.level = std::max(0, n_top - 2);
  std::map<int, size_t> dims;
  for (int d = c.lo; d <= c.hi(); ++d) {
    StableCohomology h = stable_cohomology(c, d, out.level);
    dims[d] = h.h.module.dim();
    const bool st = h.stable || n_top - 1 <= out.level;
    out.stable_by_degree[d] = st;
    out.stable = out.stable && st;
  }
  out.profile = profile_from_dims(dims);
  return out;
}

MatrixK induced_map(const FgChainMap& f, const StableCohomology& from, const StableCohomology& to) {
  require(from.level == to.level && from.degree == to.degree, ErrorKind::InvalidInput,
          "induced map: cohomology computed at different levels or degrees");
  const int j = from.level, i = from.degree;
  Quotient qs = f.source.term(i).level(j), qt = f.target.term(i).level(j);
  MatrixK fj = level_diff(f.at(i), qs, qt, j);
  return to.h.reduce * fj * from.h.reps;
}

}  // namespace adic
