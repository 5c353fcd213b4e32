#include "adic/matlis.hpp"

#include <sstream>

#include "adic/error.hpp"
#include "adic/projective.hpp"

namespace adic {

IndTorsionModule injective_hull(const Ring& ring, int budget) {
  require(budget >= 0 && budget <= ring.precision(), ErrorKind::PrecisionExceeded,
          "injective_hull: budget exceeds precision");
  IndTorsionModule out{ring, {}, {}};
  for (int t = 0; t <= budget; ++t) out.stages.push_back(dual(LevelModule::free(ring, t, 1)));
  for (int t = 0; t < budget; ++t) out.transitions.push_back(transpose(ring.free_projection(t + 1, t, 1)));
  return out;
}

IndTorsionModule matlis_dual_fg(const FgPresentation& m, int budget) {
  const Ring& ring = m.ring();
  require(budget >= 0 && budget <= ring.precision(), ErrorKind::PrecisionExceeded,
          "matlis_dual_fg: budget exceeds precision");
  const TowerModule tower = complete_fg(m).tower;
  IndTorsionModule out{ring, {}, {}};
  for (int t = 0; t <= budget; ++t) out.stages.push_back(dual(tower.levels[t]));
  for (int t = 0; t < budget; ++t) out.transitions.push_back(transpose(tower.transitions[t]));
  return out;
}

namespace {

bool check_back(const DualBack& b, const TowerModule& nt, const std::vector<Quotient>& nq, std::string* diag) {
  const TowerModule& mt = b.dual_tower;
  for (int t = 0; t <= mt.top(); ++t) {
    const std::string at = " at level " + std::to_string(t);
    const MatrixK g = mt.transition(mt.top(), t) * b.generators;
    const MatrixK phi = free_map(mt.levels[t], g);
    const MatrixK& psi = b.iso[t];
    if (!(psi * nq[t].projection == phi)) {
      *diag = "relations do not vanish on the generators" + at;
      return false;
    }
    if (psi.rows() != psi.cols() || rank(psi) != psi.rows()) {
      *diag = "generators do not give a bijection" + at;
      return false;
    }
    if (!mt.levels[t].is_linear_map_from(nt.levels[t], psi)) {
      *diag = "map is not linear" + at;
      return false;
    }
    if (t < mt.top() && !(psi * nt.transitions[t] == mt.transitions[t] * b.iso[t + 1])) {
      *diag = "maps are not compatible with transitions" + at;
      return false;
    }
  }
  return true;
}

}  // namespace

DualBack matlis_dual_back(const IndTorsionModule& t) {
  t.validate();
  const Ring& ring = t.ring;
  const int b = t.budget();
  require(b >= 0, ErrorKind::InvalidInput, "matlis_dual_back: no stages");
  TowerModule mt{ring, {}, {}};
  for (const auto& s : t.stages) mt.levels.push_back(dual(s));
  for (int s = 0; s < b; ++s) {
    MatrixK theta = transpose(t.transitions[s]);
    // dual of "T_s is the whole m^{s+1}-kernel of T_{s+1}"
    require(same_span(kernel(theta), mt.levels[s + 1].ideal_power_image(s + 1)), ErrorKind::InvalidInput,
            "matlis_dual_back: stage " + std::to_string(s) + " is not the socle layer of stage " +
                std::to_string(s + 1));
    mt.transitions.push_back(std::move(theta));
  }
  mt.validate();

  const LevelModule& top = mt.levels[b];
  const MatrixK gens = minimal_generators(top);
  const size_t r = gens.cols();
  const size_t da = ring.level_dim(b);
  const MatrixK rel_span = kernel(free_map(top, gens));
  const LevelModule free_b = LevelModule::free(ring, b, r);
  const Submodule rel = submodule(free_b, rel_span);
  const MatrixK rel_gens = rel.inclusion * minimal_generators(rel.module);
  MatrixK wide(ring.p(), r * da, rel_gens.cols() * da);
  for (size_t c = 0; c < rel_gens.cols(); ++c) wide.set_block(0, c * da, rel_gens.column(c));
  FgPresentation n(series_from_level(ring, wide, b, r, rel_gens.cols()), r);

  DualBack out{n, mt, gens, {}, false, ""};
  const CompletedModule cn = complete_fg(n);
  for (int s = 0; s <= b; ++s) {
    const MatrixK g = mt.transition(b, s) * gens;
    out.iso.push_back(free_map(mt.levels[s], g) * cn.quotients[s].section);
  }
  out.verified = check_back(out, cn.tower, cn.quotients, &out.diagnostic);
  return out;
}

bool MatlisRoundtrip::ok() const {
  if (!back.verified) return false;
  for (bool b : iso_by_level)
    if (!b) return false;
  return true;
}

MatlisRoundtrip matlis_roundtrip(const FgPresentation& m, int budget) {
  MatlisRoundtrip out{matlis_dual_fg(m, budget), {FgPresentation::free(m.ring(), 0), {m.ring(), {}, {}}, {}, {}, false, ""}, {}};
  out.back = matlis_dual_back(out.dual);
  const TowerModule tower = complete_fg(m).tower;
  for (int t = 0; t <= budget; ++t) {
    // the double dual of M_t is M_t with the same actions
    out.iso_by_level.push_back(out.back.verified && out.back.dual_tower.levels[t] == tower.levels[t] &&
                               (t == budget || out.back.dual_tower.transitions[t] == tower.transitions[t]));
  }
  return out;
}

TorsionFamily constant_family(const std::string& name, IndTorsionModule t) {
  t.validate();
  return TorsionFamily{name, {std::move(t)}};
}

TorsionFamily growing_sum_family(const std::string& name, const std::vector<LevelModule>& pieces, int budget) {
  require(!pieces.empty(), ErrorKind::InvalidInput, "growing_sum_family: no pieces");
  TorsionFamily out{name, {}};
  std::vector<LevelModule> acc;
  for (const auto& piece : pieces) {
    acc.push_back(piece.relabeled(budget));
    out.windows.push_back(ind_from_torsion_module(direct_sum(acc), budget));
  }
  return out;
}

TorsionFamily growing_window_family(const Ring& ring, int max_window, int budget) {
  require(max_window >= 1 && max_window <= budget + 1, ErrorKind::InvalidInput,
          "growing_window_family: window must lie in 1..budget+1");
  std::vector<LevelModule> pieces;
  for (int i = 1; i <= max_window; ++i) pieces.push_back(LevelModule::free(ring, i - 1, 1));
  return growing_sum_family("sum of A/m^i", pieces, budget);
}

DirectedSystem ext_system(const IndTorsionModule& t, int q) {
  DirectedSystem sys;
  const int n = t.ring.vars();
  std::vector<Subquotient> hs;
  for (const auto& s : t.stages) {
    hs.push_back(ext_A0_level(s, q));
    sys.stages.push_back(hs.back().module);
  }
  const size_t copies = (q >= 0 && q <= n) ? wedge_basis(n, q).size() : 0;
  for (int s = 0; s < t.budget(); ++s) {
    const MatrixK f = kron(MatrixK::identity(t.ring.p(), copies), t.transitions[s]);
    sys.transitions.push_back(copies ? induced_map(hs[s], hs[s + 1], f)
                                     : MatrixK(t.ring.p(), hs[s + 1].module.dim(), hs[s].module.dim()));
  }
  return sys;
}

namespace {

BassValue value_from(const DirectedSystem& sys, int q) {
  BassValue v;
  v.degree = q;
  v.stable_from = sys.stable_from();
  v.determined = sys.determined;
  v.at_least = v.stable_from < 0;
  v.value = sys.colimit_dim();
  v.stages = static_cast<int>(sys.stages.size());
  v.stage_dims = sys.dims();
  return v;
}

}  // namespace

std::string BassValue::stamp() const {
  std::ostringstream s;
  s << "mu_" << degree << " = " << (at_least ? ">= " : "") << value;
  if (!determined)
    s << " (stages not determined at the working precision)";
  else if (stable_from >= 0)
    s << " (images stable from stage " << stable_from << " of " << stages << ")";
  else
    s << " (no stabilization within " << stages << " stages)";
  if (by_window.size() > 1) {
    s << " windows [";
    for (size_t i = 0; i < by_window.size(); ++i) s << (i ? "," : "") << by_window[i];
    s << "]";
  }
  return s.str();
}

bool BassProfile::all_finite() const {
  for (const auto& v : mu)
    if (!v.finite()) return false;
  return true;
}

std::vector<size_t> BassProfile::values() const {
  std::vector<size_t> out;
  for (const auto& v : mu) out.push_back(v.value);
  return out;
}

std::string BassProfile::to_string() const {
  std::string out;
  for (const auto& v : mu) out += v.stamp() + "\n";
  return out;
}

BassProfile bass_numbers(const IndTorsionModule& t, int q_max) {
  t.validate();
  BassProfile out;
  for (int q = 0; q <= q_max; ++q) out.mu.push_back(value_from(ext_system(t, q), q));
  return out;
}

BassProfile bass_numbers(const TorsionFamily& f, int q_max) {
  require(!f.windows.empty(), ErrorKind::InvalidInput, "bass_numbers: family has no windows");
  std::vector<BassProfile> per;
  for (const auto& w : f.windows) per.push_back(bass_numbers(w, q_max));
  BassProfile out = per.back();
  for (int q = 0; q <= q_max; ++q) {
    BassValue& v = out.mu[q];
    for (const auto& p : per) v.by_window.push_back(p.mu[q].value);
    const size_t m = v.by_window.size();
    if (m >= 2 && v.by_window[m - 1] != v.by_window[m - 2]) v.at_least = true;
  }
  return out;
}

BassProfile bass_numbers(const IndComplex& m, int q_lo, int q_hi) {
  BassProfile out;
  if (m.stages.empty()) return out;
  const FgComplex kd = koszul_dual(koszul_powers(m.stages.front().ring, 1)).dual;
  std::vector<FgComplex> rh;
  std::vector<FgChainMap> maps;
  for (const auto& s : m.stages) rh.push_back(tensor(kd, s));
  for (size_t t = 0; t < m.transitions.size(); ++t) {
    const FgChainMap& f = m.transitions[t];
    const FgComplex& src = m.stages[t];
    require(src.lo == m.stages[t + 1].lo && src.hi() == m.stages[t + 1].hi(), ErrorKind::InvalidInput,
            "bass_numbers: stages must share their degree range");
    FgChainMap g{rh[t], rh[t + 1], {}};
    for (int deg = rh[t].lo; deg <= rh[t].hi(); ++deg) {
      std::vector<SeriesMatrix> blocks;
      for (int p = kd.lo; p <= kd.hi(); ++p) {
        const int q = deg - p;
        if (!src.in_range(q)) continue;
        blocks.push_back(kron(SeriesMatrix::identity(kd.ring, kd.term(p).rank), f.at(q)));
      }
      if (!blocks.empty()) g.maps.emplace(deg, block_diag(blocks, kd.ring));
    }
    maps.push_back(std::move(g));
  }
  for (int q = q_lo; q <= q_hi; ++q) out.mu.push_back(value_from(cohomology_system(rh, maps, q), q));
  return out;
}

std::string to_string(CofiniteVerdict v) {
  switch (v) {
    case CofiniteVerdict::Cofinite: return "cofinite";
    case CofiniteVerdict::NotCofinite: return "not cofinite";
    case CofiniteVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

void finish(CofinitenessReport& r, int stages, size_t windows) {
  bool unstable = false, growing = false;
  for (const auto& v : r.ext.mu) {
    if (!v.determined || v.stable_from < 0) unstable = true;
    else if (v.at_least) growing = true;
    if ((v.degree < r.window_lo || v.degree > r.window_hi) && v.value != 0) r.vanishes_outside_window = false;
  }
  r.verdict = growing ? CofiniteVerdict::NotCofinite
                      : unstable ? CofiniteVerdict::Undetermined : CofiniteVerdict::Cofinite;
  std::ostringstream s;
  s << "verdict: " << to_string(r.verdict) << " at " << stages << " stages";
  if (windows > 1) s << " and " << windows << " windows";
  s << "\nExt window: [" << r.window_lo << ", " << r.window_hi << "]\n" << r.ext.to_string();
  r.report = s.str();
}

}  // namespace

CofinitenessReport is_cohomologically_cofinite(const IndComplex& m) {
  CofinitenessReport r;
  if (m.stages.empty()) {
    finish(r, 0, 1);
    return r;
  }
  const FgComplex& last = m.stages.back();
  const int n = last.ring.vars();
  // support of H read off the last stage
  int inf = kPlusInfinity, sup = kMinusInfinity;
  for (const auto& [i, sys] : m.cohomology)
    if (!sys.stages.empty() && sys.stages.back().dim() > 0) {
      inf = std::min(inf, i);
      sup = std::max(sup, i);
    }
  if (inf != kPlusInfinity) {
    r.window_lo = inf;
    r.window_hi = sup + n;
  }
  if (!last.terms.empty()) r.ext = bass_numbers(m, last.lo, last.hi() + n);
  finish(r, static_cast<int>(m.stages.size()), 1);
  return r;
}

CofinitenessReport is_cohomologically_cofinite(const TorsionFamily& m, int degree) {
  require(!m.windows.empty(), ErrorKind::InvalidInput, "is_cohomologically_cofinite: family has no windows");
  CofinitenessReport r;
  const int n = m.windows.front().ring.vars();
  r.ext = bass_numbers(m, n);
  for (auto& v : r.ext.mu) v.degree += degree;
  bool nonzero = false;
  for (const auto& w : m.windows)
    for (const auto& s : w.stages) nonzero = nonzero || s.dim() > 0;
  if (nonzero) {
    r.window_lo = degree;
    r.window_hi = degree + n;
  }
  finish(r, m.windows.back().budget() + 1, m.windows.size());
  return r;
}

HartshorneComparison hartshorne_compare_n1(const TorsionFamily& m) {
  require(!m.windows.empty(), ErrorKind::InvalidInput, "hartshorne_compare_n1: family has no windows");
  require(m.windows.front().ring.vars() == 1, ErrorKind::InvalidInput,
          "hartshorne_compare_n1: only one variable is supported");
  HartshorneComparison out;
  out.ext_pipeline = is_cohomologically_cofinite(m, 0);
  for (const auto& w : m.windows) out.generator_counts.push_back(minimal_generator_count(dual(w.stages.back())));
  const size_t k = out.generator_counts.size();
  std::ostringstream s;
  s << "Ext pipeline: " << to_string(out.ext_pipeline.verdict) << "\n";
  if (k >= 2 && out.generator_counts[k - 1] != out.generator_counts[k - 2]) {
    out.dual_pipeline = false;
    s << "dual pipeline: not cofinite, the dual needs " << out.generator_counts[k - 2] << " then "
      << out.generator_counts[k - 1] << " generators as the window grows\n";
  } else {
    out.n = matlis_dual_back(m.windows.back());
    out.dual_pipeline = out.n->verified;
    s << "dual pipeline: " << (out.dual_pipeline ? "M is the dual of a module with " : "reconstruction failed, ")
      << (out.dual_pipeline ? std::to_string(out.n->presentation.rank) + " generators and " +
                                  std::to_string(out.n->presentation.num_relations()) + " relations"
                            : out.n->diagnostic)
      << "\n";
  }
  s << "pipelines " << (out.agree() ? "agree" : "disagree") << "\n";
  out.report = s.str();
  return out;
}

}  // namespace adic
