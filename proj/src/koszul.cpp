#include "adic/koszul.hpp"

#include <algorithm>

#include "adic/error.hpp"

namespace adic {

namespace {

using Subset = std::vector<int>;

std::map<Subset, size_t> index_map(const std::vector<Subset>& basis) {
  std::map<Subset, size_t> out;
  for (size_t i = 0; i < basis.size(); ++i) out[basis[i]] = i;
  return out;
}

Subset complement(int n, const Subset& s) {
  Subset out;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(s.begin(), s.end(), i)) out.push_back(i);
  return out;
}

TruncatedSeries signed_series(const TruncatedSeries& f, int sign) { return sign > 0 ? f : -f; }

// Multiplies e_I^* by prod_{i in I} x_i on the dual Koszul terms.
SeriesMatrix telescope_diagonal(const Ring& ring, int n, int j) {
  auto basis = wedge_basis(n, j);
  SeriesMatrix d(ring, basis.size(), basis.size());
  for (size_t c = 0; c < basis.size(); ++c) {
    TruncatedSeries f = TruncatedSeries::constant(ring, 1);
    for (int i : basis[c]) f = f * TruncatedSeries::variable(ring, i);
    d(c, c) = f;
  }
  return d;
}

FgPresentation repeated(const FgPresentation& m, size_t copies) {
  if (copies == 0) return FgPresentation::free(m.ring(), 0);
  FgPresentation out = m;
  for (size_t i = 1; i < copies; ++i) out = direct_sum(out, m);
  return out;
}

}  // namespace

std::vector<std::vector<int>> wedge_basis(int n, int j) {
  std::vector<Subset> out;
  if (j < 0 || j > n) return out;
  Subset s(j);
  for (int i = 0; i < j; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = j - 1;
    while (i >= 0 && s[i] == n - j + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int k = i + 1; k < j; ++k) s[k] = s[k - 1] + 1;
  }
  return out;
}

KoszulComplex koszul(const std::vector<TruncatedSeries>& a) {
  require(!a.empty(), ErrorKind::InvalidInput, "koszul: empty sequence");
  const Ring& ring = a[0].ring();
  for (size_t i = 0; i < a.size(); ++i)
    require(!a[i].is_unit(), ErrorKind::InvalidInput,
            "koszul: generator " + std::to_string(i) + " is a unit");
  const int n = static_cast<int>(a.size());
  FgComplex c{ring, -n, {}, {}};
  for (int j = n; j >= 0; --j) c.terms.push_back(FgPresentation::free(ring, wedge_basis(n, j).size()));
  for (int j = n; j >= 1; --j) {
    auto src = wedge_basis(n, j);
    auto dst = index_map(wedge_basis(n, j - 1));
    SeriesMatrix d(ring, dst.size(), src.size());
    for (size_t col = 0; col < src.size(); ++col) {
      for (int s = 0; s < j; ++s) {
        Subset rest = src[col];
        rest.erase(rest.begin() + s);
        auto& e = d(dst.at(rest), col);
        e = e + signed_series(a[src[col][s]], s % 2 == 0 ? 1 : -1);
      }
    }
    c.diffs.push_back(std::move(d));
  }
  return KoszulComplex{a, std::move(c)};
}

KoszulComplex koszul_powers(const Ring& ring, int t) {
  require(t >= 1, ErrorKind::InvalidInput, "koszul_powers: t must be positive");
  std::vector<TruncatedSeries> a;
  for (int i = 0; i < ring.vars(); ++i) a.push_back(power(TruncatedSeries::variable(ring, i), t));
  return koszul(a);
}

int koszul_duality_sign(int n, const std::vector<int>& subset) {
  const Subset comp = complement(n, subset);
  int inversions = 0;
  for (int a : subset)
    for (int b : comp)
      if (a > b) ++inversions;
  const int m = static_cast<int>(subset.size());
  const int e = inversions + n * m + m * (m - 1) / 2;
  return e % 2 == 0 ? 1 : -1;
}

KoszulDual koszul_dual(const KoszulComplex& k) {
  const int n = k.length();
  const Ring& ring = k.complex.ring;
  FgComplex dual{ring, 0, {}, {}};
  for (int j = 0; j <= n; ++j) dual.terms.push_back(k.complex.term(-j));
  for (int j = 0; j < n; ++j) dual.diffs.push_back(transpose(k.complex.diff(-j - 1)));
  FgComplex shifted = shift(k.complex, -n);

  FgChainMap iso{dual, shifted, {}};
  for (int j = 0; j <= n; ++j) {
    auto src = wedge_basis(n, j);
    auto dst = index_map(wedge_basis(n, n - j));
    SeriesMatrix phi(ring, dst.size(), src.size());
    for (size_t c = 0; c < src.size(); ++c)
      phi(dst.at(complement(n, src[c])), c) = TruncatedSeries::constant(ring, koszul_duality_sign(n, src[c]));
    iso.maps.emplace(j, std::move(phi));
  }

  KoszulDual out{dual, shifted, iso, true, ""};
  for (int j = 0; j < n && out.verified; ++j) {
    // entrywise: phi^{j+1} d_dual^j == d_shift^j phi^j
    if (!(iso.at(j + 1) * dual.diff(j) == shifted.diff(j) * iso.at(j))) {
      out.verified = false;
      out.diagnostic = "duality does not commute with d in degree " + std::to_string(j);
    }
  }
  for (int j = 0; j <= n && out.verified; ++j) {
    const MatrixK c = iso.at(j).constant_part();
    if (c.rows() != c.cols() || rank(c) != c.rows()) {
      out.verified = false;
      out.diagnostic = "duality not invertible in degree " + std::to_string(j);
    }
  }
  return out;
}

FgComplex derived_tensor_A0(const FgComplex& m) {
  return tensor(koszul_powers(m.ring, 1).complex, m);
}

FgComplex rhom_A0(const FgComplex& m) {
  return tensor(koszul_dual(koszul_powers(m.ring, 1)).dual, m);
}

TorsionCohomology ext_A0(const FgComplex& m, int j) { return torsion_cohomology(rhom_A0(m), j); }

MatrixK act_blockwise(const SeriesMatrix& pattern, const LevelModule& m) {
  const size_t d = m.dim();
  MatrixK out(m.p(), pattern.rows() * d, pattern.cols() * d);
  for (size_t r = 0; r < pattern.rows(); ++r)
    for (size_t c = 0; c < pattern.cols(); ++c)
      if (!pattern(r, c).is_zero()) out.set_block(r * d, c * d, m.series_action(pattern(r, c)));
  return out;
}

namespace {

LevelComplex on_module(const FgComplex& pattern, const LevelModule& m) {
  LevelComplex out{m.ring(), m.level(), pattern.lo, {}, {}};
  for (const auto& t : pattern.terms) out.terms.push_back(direct_sum(std::vector<LevelModule>(t.rank, m)));
  for (const auto& d : pattern.diffs) out.diffs.push_back(act_blockwise(d, m));
  return out;
}

}  // namespace

LevelComplex koszul_on(const LevelModule& m) { return on_module(koszul_powers(m.ring(), 1).complex, m); }

LevelComplex koszul_dual_on(const LevelModule& m) {
  return on_module(koszul_dual(koszul_powers(m.ring(), 1)).dual, m);
}

Subquotient ext_A0_level(const LevelModule& m, int j) { return cohomology(koszul_dual_on(m), j); }

Subquotient tor_A0_level(const LevelModule& m, int j) { return cohomology(koszul_on(m), -j); }

namespace {

// rank of the composite stage t -> stage s
size_t composite_rank(const std::vector<MatrixK>& f, int t, int s) {
  MatrixK c = f[t];
  for (int u = t + 1; u < s; ++u) c = f[u] * c;
  return rank(c);
}

}  // namespace

int DirectedSystem::stable_from() const {
  const int last = static_cast<int>(transitions.size());
  // consecutive: rank f_t = rank f_{t+1} = rank(f_{t+1} f_t) from t on
  int consecutive = -1;
  for (int t = last - 2; t >= 0; --t) {
    const size_t r0 = rank(transitions[t]), r1 = rank(transitions[t + 1]);
    if (r0 != r1 || rank(transitions[t + 1] * transitions[t]) != r0) break;
    consecutive = t;
  }
  // composite: r(t, last) constant over at least two stages whose kernels
  // stopped growing one step before the end; catches nilpotent transitions
  int composite = -1;
  if (last >= 3) {
    const size_t c = composite_rank(transitions, last - 2, last);
    for (int t = last - 2; t >= 0; --t) {
      const size_t r = composite_rank(transitions, t, last);
      if (r != c || (t < last - 2 && composite_rank(transitions, t, last - 1) != r)) break;
      if (t < last - 2) composite = t;
    }
  }
  if (consecutive < 0) return composite;
  if (composite < 0) return consecutive;
  return std::min(consecutive, composite);
}

size_t DirectedSystem::colimit_dim() const {
  if (transitions.empty()) return stages.empty() ? 0 : stages.back().dim();
  const int t0 = stable_from();
  const int last = static_cast<int>(transitions.size());
  if (t0 >= 0) return composite_rank(transitions, t0, last);
  return rank(transitions.back());
}

std::vector<size_t> DirectedSystem::dims() const {
  std::vector<size_t> out;
  for (const auto& s : stages) out.push_back(s.dim());
  return out;
}

IndComplex telescope_gamma(const FgComplex& m, int budget) {
  require(budget >= 1, ErrorKind::InvalidInput, "telescope: budget must be positive");
  const Ring& ring = m.ring;
  const int n = ring.vars();
  IndComplex out;
  std::vector<FgComplex> duals;
  for (int t = 1; t <= budget; ++t) {
    duals.push_back(koszul_dual(koszul_powers(ring, t)).dual);
    out.stages.push_back(tensor(duals.back(), m));
  }
  for (int t = 0; t + 1 < budget; ++t) {
    const FgComplex& a = duals[t];
    FgChainMap f{out.stages[t], out.stages[t + 1], {}};
    for (int deg = out.stages[t].lo; deg <= out.stages[t].hi(); ++deg) {
      std::vector<SeriesMatrix> blocks;
      for (int p = a.lo; p <= a.hi(); ++p) {
        const int q = deg - p;
        if (!m.in_range(q)) continue;
        blocks.push_back(kron(telescope_diagonal(ring, n, p), SeriesMatrix::identity(ring, m.term(q).rank)));
      }
      if (!blocks.empty()) f.maps.emplace(deg, block_diag(blocks, ring));
    }
    out.transitions.push_back(std::move(f));
  }

  if (out.stages.front().terms.empty()) return out;
  for (int i = out.stages.front().lo; i <= out.stages.front().hi(); ++i) {
    DirectedSystem sys = cohomology_system(out.stages, out.transitions, i);
    out.stable_from[i] = sys.stable_from();
    out.stable[i] = sys.determined && sys.stable_from() >= 0;
    out.cohomology.emplace(i, std::move(sys));
  }
  return out;
}

DirectedSystem cohomology_system(const std::vector<FgComplex>& stages, const std::vector<FgChainMap>& transitions,
                                 int i) {
  require(transitions.size() + 1 == stages.size(), ErrorKind::InvalidInput,
          "cohomology_system: need one transition per adjacent pair of stages");
  DirectedSystem sys;
  if (stages.empty()) return sys;
  int level = std::max(0, stages.front().ring.precision() - 2);
  std::vector<TorsionCohomology> own;
  for (const auto& s : stages) {
    own.push_back(torsion_cohomology(s, i));
    level = std::min(level, own.back().value.level);
  }
  // every stage must already be fully visible at the common level
  for (const auto& tc : own)
    sys.determined = sys.determined && tc.determined && tc.dims_by_level[level] == tc.value.h.module.dim();
  std::vector<StableCohomology> hs;
  for (const auto& s : stages) {
    hs.push_back(stable_cohomology(s, i, level));
    sys.stages.push_back(hs.back().h.module);
  }
  for (size_t t = 0; t + 1 < hs.size(); ++t) sys.transitions.push_back(induced_map(transitions[t], hs[t], hs[t + 1]));
  return sys;
}

IndComplex telescope_gamma(const FgPresentation& m, int budget) {
  return telescope_gamma(single_presentation(m, 0), budget);
}

std::vector<size_t> Resolution::ranks() const {
  std::vector<size_t> out;
  for (int d = 0; d >= complex.lo; --d) out.push_back(complex.term(d).rank);
  return out;
}

namespace {

// dim P / mP for a submodule P (column span) of the free module A_j^r.
size_t minimal_count(const Ring& ring, int j, size_t r, const MatrixK& span, MatrixK* mp) {
  const LevelModule f = LevelModule::free(ring, j, r);
  MatrixK acc(ring.p(), f.dim(), 0);
  for (int i = 0; i < ring.vars(); ++i) acc = hstack(acc, f.action(i) * span);
  *mp = acc.cols() ? column_space(acc) : acc;
  return rank(span) - rank(*mp);
}

struct SyzygyStep {
  int level = 0;   // where the generator count was read off
  size_t count = 0;
  MatrixK cycles;  // level-N kernel basis
  MatrixK projected;
  MatrixK m_projected;
};

// Counts minimal generators of the syzygy module at the highest level j <= N-2
// where kernel levels N and N-1 agree; lower j hides truncation artifacts.
SyzygyStep syzygy_step(const Ring& ring, const MatrixK& map_n, const MatrixK& map_n1, size_t r) {
  const int n_top = ring.precision();
  SyzygyStep out;
  out.cycles = kernel(map_n);
  const MatrixK lower_cycles = kernel(map_n1);
  for (int j = n_top - 2; j >= 0; --j) {
    MatrixK mp, mp1;
    MatrixK projected = ring.free_projection(n_top, j, r) * out.cycles;
    const size_t count = minimal_count(ring, j, r, projected, &mp);
    const size_t check = minimal_count(ring, j, r, ring.free_projection(n_top - 1, j, r) * lower_cycles, &mp1);
    if (count == check) {
      out.level = j;
      out.count = count;
      out.projected = std::move(projected);
      out.m_projected = std::move(mp);
      return out;
    }
  }
  fail(ErrorKind::PrecisionExceeded, "resolution: syzygy count changes between kernel levels N and N-1; increase N");
}

}  // namespace

Resolution resolve_free_fg(const FgPresentation& m, int length) {
  require(length >= 0, ErrorKind::InvalidInput, "resolve_free_fg: negative length");
  const Ring& ring = m.ring();
  const int n_top = ring.precision();
  require(n_top >= 2, ErrorKind::PrecisionExceeded, "resolve_free_fg needs N >= 2; increase N");

  // minimal generators from A_0^r / im R_0, greedily in standard order
  Quotient q0 = m.level(0);
  std::vector<size_t> chosen;
  MatrixK img(ring.p(), q0.module.dim(), 0);
  for (size_t g = 0; g < m.rank && img.cols() < q0.module.dim(); ++g) {
    MatrixK cand = hstack(img, q0.projection.column(g));
    if (rank(cand) > img.cols()) {
      img = cand;
      chosen.push_back(g);
    }
  }
  SeriesMatrix aug(ring, m.rank, chosen.size());
  for (size_t c = 0; c < chosen.size(); ++c) aug(chosen[c], c) = TruncatedSeries::constant(ring, 1);

  std::vector<SeriesMatrix> syz;
  std::vector<size_t> ranks{chosen.size()};
  Quotient qn = m.level(n_top), qn1 = m.level(n_top - 1);
  MatrixK map_n = qn.projection * aug.level_matrix(n_top);
  MatrixK map_n1 = qn1.projection * aug.level_matrix(n_top - 1);
  int check_level = n_top - 2;
  for (int s = 1; s <= length; ++s) {
    const size_t r = ranks.back();
    if (r == 0) break;
    SyzygyStep st = syzygy_step(ring, map_n, map_n1, r);
    if (st.count == 0) break;
    check_level = std::min(check_level, st.level);
    const size_t dn = ring.level_dim(n_top);
    MatrixK gens(ring.p(), r * dn, 0);
    MatrixK seen = st.m_projected;
    for (size_t c = 0; c < st.cycles.cols() && gens.cols() < st.count; ++c) {
      MatrixK cand = hstack(seen, st.projected.column(c));
      if (rank(cand) > rank(seen)) {
        seen = cand;
        gens = hstack(gens, st.cycles.column(c));
      }
    }
    require(gens.cols() == st.count, ErrorKind::PreconditionFailed, "resolution: generator selection failed");
    MatrixK wide(ring.p(), r * dn, st.count * dn);
    for (size_t c = 0; c < st.count; ++c) wide.set_block(0, c * dn, gens.column(c));
    syz.push_back(series_from_level(ring, wide, n_top, r, st.count));
    ranks.push_back(st.count);
    map_n = syz.back().level_matrix(n_top);
    map_n1 = syz.back().level_matrix(n_top - 1);
  }

  const int len = static_cast<int>(syz.size());
  FgComplex c{ring, -len, {}, {}};
  for (int d = -len; d <= 0; ++d) c.terms.push_back(FgPresentation::free(ring, ranks[-d]));
  for (int d = -len; d < 0; ++d) c.diffs.push_back(syz[-d - 1]);
  Resolution out{m, std::move(c), aug, true, ""};

  // per-level checks of the augmented complex
  const bool complete = len < length || ranks.back() == 0;
  for (int k = 0; k <= check_level && out.verified; ++k) {
    Quotient qk = m.level(k);
    MatrixK eps = qk.projection * aug.level_matrix(k);
    if (rank(eps) != qk.module.dim()) {
      out.verified = false;
      out.diagnostic = "augmentation not surjective at level " + std::to_string(k);
      break;
    }
    if (len >= 1 && !same_span(kernel(eps), column_space(syz[0].level_matrix(k)))) {
      out.verified = false;
      out.diagnostic = "not exact at degree 0, level " + std::to_string(k);
      break;
    }
    for (int d = -1; d >= -len; --d) {
      if (d == -len && !complete) break;
      if (stable_cohomology(out.complex, d, k).h.module.dim() != 0) {
        out.verified = false;
        out.diagnostic = "not exact at degree " + std::to_string(d) + ", level " + std::to_string(k);
        break;
      }
    }
  }
  return out;
}

ExtResult ext_fg(const FgPresentation& m, const FgPresentation& target, int j, int level) {
  require(j >= 0, ErrorKind::InvalidInput, "ext_fg: negative degree");
  Resolution res = resolve_free_fg(m, j + 1);
  const Ring& ring = m.ring();
  const int len = -res.complex.lo;
  FgComplex hom{ring, 0, {}, {}};
  for (int s = 0; s <= len; ++s) hom.terms.push_back(repeated(target, res.complex.term(-s).rank));
  for (int s = 0; s < len; ++s)
    hom.diffs.push_back(kron(transpose(res.complex.diff(-s - 1)), SeriesMatrix::identity(ring, target.rank)));
  StableCohomology h = stable_cohomology(hom, j, level);
  return ExtResult{j, level, h.stable, h.complex, h.h};
}

ExtResult ext_fg(const FgPresentation& m, const FgPresentation& target, int j) {
  return ext_fg(m, target, j, std::max(0, m.ring().precision() - 2));
}

}  // namespace adic
