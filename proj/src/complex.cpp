#include "adic/complex.hpp"

#include <algorithm>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

namespace {

LevelModule sum_or_zero(const std::vector<LevelModule>& parts, const Ring& ring, int level) {
  return parts.empty() ? LevelModule::zero(ring, level) : direct_sum(parts);
}

uint32_t sign(int e, uint32_t p) { return (e % 2 == 0) ? 1 : p - 1; }

}  // namespace

LevelModule LevelComplex::term(int deg) const {
  return in_range(deg) ? terms[deg - lo] : LevelModule::zero(ring, level);
}

MatrixK LevelComplex::diff(int deg) const {
  if (deg >= lo && deg < hi()) return diffs[deg - lo];
  return MatrixK(ring.p(), term(deg + 1).dim(), term(deg).dim());
}

void LevelComplex::validate() const {
  require(diffs.size() + 1 == terms.size() || (terms.empty() && diffs.empty()), ErrorKind::InvalidInput,
          "complex: need one differential between consecutive terms");
  for (int d = lo; d <= hi(); ++d) {
    const std::string at = " in degree " + std::to_string(d);
    const LevelModule& t = terms[d - lo];
    require(t.level() == level, ErrorKind::InvalidInput, "complex: term at wrong level" + at);
    if (d == hi()) break;
    const MatrixK& f = diffs[d - lo];
    require(f.rows() == terms[d - lo + 1].dim() && f.cols() == t.dim(), ErrorKind::InvalidInput,
            "complex: differential extents" + at);
    require(terms[d - lo + 1].is_linear_map_from(t, f), ErrorKind::InvalidInput,
            "complex: differential not linear" + at);
    if (d + 1 < hi())
      require((diffs[d - lo + 1] * f).is_zero(), ErrorKind::InvalidInput,
              "complex: d o d != 0" + at);
  }
}

LevelComplex make_complex(const Ring& ring, int level, int lo, std::vector<LevelModule> terms,
                          std::vector<MatrixK> diffs) {
  LevelComplex c{ring, level, lo, std::move(terms), std::move(diffs)};
  c.validate();
  return c;
}

LevelComplex single_term(const LevelModule& m, int degree) {
  return LevelComplex{m.ring(), m.level(), degree, {m}, {}};
}

LevelComplex zero_complex(const Ring& ring, int level) { return LevelComplex{ring, level, 0, {}, {}}; }

Subquotient cohomology(const LevelComplex& c, int i) {
  return subquotient(c.term(i), kernel(c.diff(i)), c.diff(i - 1));
}

MatrixK induced_map(const Subquotient& from, const Subquotient& to, const MatrixK& f) {
  return to.reduce * f * from.reps;
}

std::string bound_to_string(int v) {
  if (v == kPlusInfinity) return "+inf";
  if (v == kMinusInfinity) return "-inf";
  return std::to_string(v);
}

std::string CohomologyProfile::to_string() const {
  std::ostringstream os;
  os << "inf=" << bound_to_string(inf) << " sup=" << bound_to_string(sup)
     << " amp=" << bound_to_string(amp) << " dims={";
  bool first = true;
  for (auto [d, n] : dims) {
    os << (first ? "" : ", ") << d << ":" << n;
    first = false;
  }
  os << "}";
  return os.str();
}

CohomologyProfile profile_from_dims(const std::map<int, size_t>& dims) {
  CohomologyProfile out;
  for (auto [d, n] : dims)
    if (n) out.dims[d] = n;
  if (!out.dims.empty()) {
    out.inf = out.dims.begin()->first;
    out.sup = out.dims.rbegin()->first;
    out.amp = out.sup - out.inf;
  }
  return out;
}

CohomologyProfile profile(const LevelComplex& c) {
  std::map<int, size_t> dims;
  for (int d = c.lo; d <= c.hi(); ++d) dims[d] = cohomology(c, d).module.dim();
  return profile_from_dims(dims);
}

long euler_characteristic(const LevelComplex& c) {
  long s = 0;
  for (int d = c.lo; d <= c.hi(); ++d) s += (d % 2 == 0 ? 1 : -1) * static_cast<long>(c.term(d).dim());
  return s;
}

long cohomology_euler_characteristic(const LevelComplex& c) {
  long s = 0;
  for (int d = c.lo; d <= c.hi(); ++d)
    s += (d % 2 == 0 ? 1 : -1) * static_cast<long>(cohomology(c, d).module.dim());
  return s;
}

LevelComplex shift(const LevelComplex& c, int s) {
  LevelComplex out{c.ring, c.level, c.lo - s, c.terms, {}};
  for (const auto& d : c.diffs) out.diffs.push_back(scaled(d, sign(s < 0 ? -s : s, c.ring.p())));
  return out;
}

MatrixK ChainMap::at(int deg) const {
  auto it = maps.find(deg);
  if (it != maps.end()) return it->second;
  return MatrixK(source.ring.p(), target.term(deg).dim(), source.term(deg).dim());
}

void ChainMap::validate() const {
  const int lo = std::min(source.lo, target.lo) - 1;
  const int hi = std::max(source.hi(), target.hi()) + 1;
  for (int d = lo; d <= hi; ++d) {
    const std::string where = " in degree " + std::to_string(d);
    const MatrixK f = at(d);
    require(f.rows() == target.term(d).dim() && f.cols() == source.term(d).dim(), ErrorKind::InvalidInput,
            "chain map extents" + where);
    require(target.term(d).is_linear_map_from(source.term(d), f), ErrorKind::InvalidInput,
            "chain map not linear" + where);
    require(target.diff(d) * f == at(d + 1) * source.diff(d), ErrorKind::InvalidInput,
            "chain map does not commute with differentials" + where);
  }
}

ChainMap identity_map(const LevelComplex& c) {
  ChainMap f{c, c, {}};
  for (int d = c.lo; d <= c.hi(); ++d) f.maps[d] = MatrixK::identity(c.ring.p(), c.term(d).dim());
  return f;
}

MatrixK induced_map(const ChainMap& f, int i) {
  return induced_map(cohomology(f.source, i), cohomology(f.target, i), f.at(i));
}

bool is_quasi_iso(const ChainMap& f) {
  const int lo = std::min(f.source.lo, f.target.lo);
  const int hi = std::max(f.source.hi(), f.target.hi());
  for (int d = lo; d <= hi; ++d) {
    Subquotient hs = cohomology(f.source, d), ht = cohomology(f.target, d);
    if (hs.module.dim() != ht.module.dim()) return false;
    if (rank(induced_map(hs, ht, f.at(d))) != ht.module.dim()) return false;
  }
  return true;
}

Truncation truncate_le(const LevelComplex& c, int i) {
  LevelComplex out{c.ring, c.level, c.lo, {}, {}};
  ChainMap map{out, c, {}};
  if (i < c.lo) {
    map.source = out;
    return {out, map};
  }
  const int top = std::min(i, c.hi());
  for (int d = c.lo; d < top; ++d) {
    out.terms.push_back(c.term(d));
    if (d + 1 < top) out.diffs.push_back(c.diff(d));
    map.maps[d] = MatrixK::identity(c.ring.p(), c.term(d).dim());
  }
  if (top == i) {
    Submodule z = submodule(c.term(i), kernel(c.diff(i)));
    out.terms.push_back(z.module);
    if (i > c.lo) out.diffs.push_back(z.retraction * c.diff(i - 1));
    map.maps[i] = z.inclusion;
  } else {
    out.terms.push_back(c.term(top));
    if (top > c.lo) out.diffs.push_back(c.diff(top - 1));
    map.maps[top] = MatrixK::identity(c.ring.p(), c.term(top).dim());
  }
  map.source = out;
  return {out, map};
}

Truncation truncate_ge(const LevelComplex& c, int i) {
  const int start = std::max(i, c.lo);
  LevelComplex out{c.ring, c.level, start, {}, {}};
  ChainMap map{c, out, {}};
  if (start > c.hi()) {
    map.target = out;
    return {out, map};
  }
  Quotient q = quotient(c.term(start), c.diff(start - 1));
  out.terms.push_back(q.module);
  map.maps[start] = q.projection;
  for (int d = start + 1; d <= c.hi(); ++d) {
    out.diffs.push_back(d == start + 1 ? c.diff(start) * q.section : c.diff(d - 1));
    out.terms.push_back(c.term(d));
    map.maps[d] = MatrixK::identity(c.ring.p(), c.term(d).dim());
  }
  map.target = out;
  return {out, map};
}

Cone cone(const ChainMap& f) {
  const LevelComplex& x = f.source;
  const LevelComplex& y = f.target;
  const uint32_t p = x.ring.p();
  int lo = std::min(x.terms.empty() ? y.lo : x.lo - 1, y.terms.empty() ? x.lo - 1 : y.lo);
  int hi = std::max(x.terms.empty() ? y.hi() : x.hi() - 1, y.terms.empty() ? x.hi() - 1 : y.hi());
  LevelComplex c{x.ring, x.level, lo, {}, {}};
  LevelComplex xs = shift(x, 1);
  ChainMap in{y, c, {}}, out{c, xs, {}};
  for (int d = lo; d <= hi; ++d) {
    const LevelModule xa = x.term(d + 1), ya = y.term(d);
    c.terms.push_back(direct_sum({xa, ya}));
    if (d < hi) {
      const size_t xb = x.term(d + 2).dim(), yb = y.term(d + 1).dim();
      MatrixK m(p, xb + yb, xa.dim() + ya.dim());
      m.set_block(0, 0, -x.diff(d + 1));
      m.set_block(xb, 0, f.at(d + 1));
      m.set_block(xb, xa.dim(), y.diff(d));
      c.diffs.push_back(std::move(m));
    }
    MatrixK inc(p, xa.dim() + ya.dim(), ya.dim());
    inc.set_block(xa.dim(), 0, MatrixK::identity(p, ya.dim()));
    in.maps[d] = inc;
    MatrixK proj(p, xa.dim(), xa.dim() + ya.dim());
    proj.set_block(0, 0, MatrixK::identity(p, xa.dim()));
    out.maps[d] = proj;
  }
  if (lo > hi) c = LevelComplex{x.ring, x.level, 0, {}, {}};
  in.target = c;
  out.source = c;
  return {c, in, out};
}

bool long_exact_sequence_exact(const ChainMap& f, const Cone& cn) {
  const LevelComplex& x = f.source;
  const LevelComplex& y = f.target;
  const LevelComplex& c = cn.complex;
  const int lo = std::min({x.lo, y.lo, c.lo}) - 1;
  const int hi = std::max({x.hi(), y.hi(), c.hi()}) + 1;
  auto exact_at = [](const MatrixK& in, const MatrixK& out, size_t dim) {
    return (out * in).is_zero() && rank(in) + rank(out) == dim;
  };
  for (int i = lo; i <= hi; ++i) {
    Subquotient hx = cohomology(x, i), hy = cohomology(y, i), hc = cohomology(c, i);
    Subquotient hx1 = cohomology(x, i + 1), hy1 = cohomology(y, i + 1);
    MatrixK a = induced_map(hx, hy, f.at(i));
    MatrixK b = induced_map(hy, hc, cn.from_target.at(i));
    MatrixK conn = hx1.reduce * cn.to_shift.at(i) * hc.reps;
    MatrixK a1 = induced_map(hx1, hy1, f.at(i + 1));
    if (!exact_at(a, b, hy.module.dim())) return false;
    if (!exact_at(b, conn, hc.module.dim())) return false;
    if (!exact_at(conn, a1, hx1.module.dim())) return false;
  }
  return true;
}

TensorComplex tensor(const LevelComplex& m, const LevelComplex& n) {
  require(m.level == n.level, ErrorKind::InvalidInput, "tensor of complexes: level mismatch");
  const uint32_t p = m.ring.p();
  TensorComplex out{LevelComplex{m.ring, m.level, m.lo + n.lo, {}, {}}, {}, {}};
  if (m.terms.empty() || n.terms.empty()) {
    out.complex.lo = 0;
    return out;
  }
  const int lo = m.lo + n.lo, hi = m.hi() + n.hi();
  std::vector<size_t> dims;
  for (int t = lo; t <= hi; ++t) {
    std::vector<LevelModule> parts;
    size_t off = 0;
    for (int a = m.lo; a <= m.hi(); ++a) {
      const int b = t - a;
      if (!n.in_range(b)) continue;
      auto tp = tensor_level(m.term(a), n.term(b));
      out.offsets[{a, b}] = off;
      off += tp.module.dim();
      parts.push_back(tp.module);
      out.pieces.emplace(std::make_pair(a, b), std::move(tp));
    }
    out.complex.terms.push_back(sum_or_zero(parts, m.ring, m.level));
    dims.push_back(off);
  }
  for (int t = lo; t < hi; ++t) {
    MatrixK d(p, dims[t + 1 - lo], dims[t - lo]);
    for (int a = m.lo; a <= m.hi(); ++a) {
      const int b = t - a;
      if (!n.in_range(b)) continue;
      const auto& src = out.pieces.at({a, b});
      const size_t col = out.offsets.at({a, b});
      if (m.in_range(a + 1)) {
        const auto& dst = out.pieces.at({a + 1, b});
        MatrixK blk = tensor_maps(m.diff(a), MatrixK::identity(p, n.term(b).dim()), src, dst);
        d.set_block(out.offsets.at({a + 1, b}), col, blk);
      }
      if (n.in_range(b + 1)) {
        const auto& dst = out.pieces.at({a, b + 1});
        MatrixK blk = tensor_maps(MatrixK::identity(p, m.term(a).dim()), n.diff(b), src, dst);
        const size_t row = out.offsets.at({a, b + 1});
        d.set_block(row, col, d.block(row, col, blk.rows(), blk.cols()) + scaled(blk, sign(a < 0 ? -a : a, p)));
      }
    }
    out.complex.diffs.push_back(std::move(d));
  }
  return out;
}

}  // namespace adic
