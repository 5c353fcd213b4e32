#include "adic/tower.hpp"

#include <algorithm>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

FgPresentation::FgPresentation(SeriesMatrix rel, size_t r) : relations(std::move(rel)), rank(r) {
  require(relations.rows() == rank, ErrorKind::InvalidInput,
          "presentation: relation matrix must have one row per generator");
}

FgPresentation FgPresentation::free(const Ring& ring, size_t rank) {
  return FgPresentation(SeriesMatrix(ring, rank, 0), rank);
}

FgPresentation FgPresentation::cyclic(const Ring& ring, const std::vector<TruncatedSeries>& rels) {
  SeriesMatrix m(ring, 1, rels.size());
  for (size_t j = 0; j < rels.size(); ++j) m(0, j) = rels[j];
  return FgPresentation(std::move(m), 1);
}

FgPresentation FgPresentation::residue_field(const Ring& ring) {
  std::vector<TruncatedSeries> vars;
  for (int i = 0; i < ring.vars(); ++i) vars.push_back(TruncatedSeries::variable(ring, i));
  return cyclic(ring, vars);
}

Quotient FgPresentation::level(int k) const {
  return module_from_level_presentation(ring(), k, relations, rank);
}

FgPresentation direct_sum(const FgPresentation& a, const FgPresentation& b) {
  return FgPresentation(block_diag({a.relations, b.relations}, a.ring()), a.rank + b.rank);
}

FgPresentation tensor(const FgPresentation& a, const FgPresentation& b) {
  const Ring& ring = a.ring();
  SeriesMatrix left = kron(a.relations, SeriesMatrix::identity(ring, b.rank));
  SeriesMatrix right = kron(SeriesMatrix::identity(ring, a.rank), b.relations);
  return FgPresentation(hstack(left, right), a.rank * b.rank);
}

MatrixK TowerModule::transition(int from, int to) const {
  require(to <= from && from <= top() && to >= 0, ErrorKind::InvalidInput,
          "tower transition: bad level pair");
  MatrixK out = MatrixK::identity(ring.p(), levels[from].dim());
  for (int k = from - 1; k >= to; --k) out = transitions[k] * out;
  return out;
}

void TowerModule::validate() const {
  require(transitions.size() + 1 == levels.size() || levels.empty(), ErrorKind::InvalidInput,
          "tower: need one transition per adjacent pair of levels");
  for (int k = 0; k <= top(); ++k) {
    const std::string at = " at level " + std::to_string(k);
    require(levels[k].level() == k, ErrorKind::InvalidInput, "tower: level label mismatch" + at);
    levels[k].validate();
    if (k == top()) break;
    const MatrixK& t = transitions[k];
    const LevelModule& lo = levels[k];
    const LevelModule& hi = levels[k + 1];
    require(t.rows() == lo.dim() && t.cols() == hi.dim(), ErrorKind::InvalidInput,
            "tower: transition extents" + at);
    require(lo.is_linear_map_from(hi, t), ErrorKind::InvalidInput, "tower: transition not linear" + at);
    require(rank(t) == lo.dim(), ErrorKind::InvalidInput, "tower: transition not surjective" + at);
    require(same_span(kernel(t), hi.ideal_power_image(k + 1)), ErrorKind::InvalidInput,
            "tower: transition kernel differs from m^{k+1} M_{k+1}" + at);
  }
}

bool TowerModule::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelModule& m) { return m.dim() == 0; });
}

void TowerMorphism::validate() const {
  require(source.top() == target.top() && static_cast<int>(maps.size()) == source.top() + 1,
          ErrorKind::InvalidInput, "tower morphism: level count mismatch");
  for (int k = 0; k <= source.top(); ++k) {
    require(target.levels[k].is_linear_map_from(source.levels[k], maps[k]), ErrorKind::InvalidInput,
            "tower morphism not linear at level " + std::to_string(k));
    if (k < source.top())
      require(target.transitions[k] * maps[k + 1] == maps[k] * source.transitions[k],
              ErrorKind::InvalidInput,
              "tower morphism not compatible with transitions at level " + std::to_string(k));
  }
}

CompletedModule complete_fg(const FgPresentation& m) {
  const Ring& ring = m.ring();
  CompletedModule out{m, TowerModule{ring, {}, {}}, {}};
  for (int k = 0; k <= ring.precision(); ++k) {
    out.quotients.push_back(m.level(k));
    out.tower.levels.push_back(out.quotients.back().module);
  }
  for (int k = 0; k < ring.precision(); ++k)
    out.tower.transitions.push_back(out.quotients[k].projection *
                                    ring.free_projection(k + 1, k, m.rank) *
                                    out.quotients[k + 1].section);
  return out;
}

DecayingFreeModule DecayingFreeModule::finite(const Ring& ring, size_t size) {
  return {ring, size, false};
}

DecayingFreeModule DecayingFreeModule::windowed(const Ring& ring, size_t window) {
  return {ring, window, true};
}

DecayingFreeModule DecayingFreeModule::with_window(size_t window) const {
  require(countable, ErrorKind::InvalidInput, "with_window: index set is finite");
  return {ring, window, true};
}

LevelModule DecayingFreeModule::level(int k) const { return LevelModule::free(ring, k, size); }

TowerModule DecayingFreeModule::tower() const {
  TowerModule t{ring, {}, {}};
  for (int k = 0; k <= ring.precision(); ++k) t.levels.push_back(level(k));
  for (int k = 0; k < ring.precision(); ++k) t.transitions.push_back(ring.free_projection(k + 1, k, size));
  return t;
}

TowerMorphism universal_map(const DecayingFreeModule& f, const TowerModule& target,
                            const std::vector<MatrixK>& assignment) {
  require(assignment.size() <= f.materialized(), ErrorKind::InvalidInput,
          "universal_map: assignment touches unmaterialized indices");
  require(assignment.size() == f.materialized(), ErrorKind::InvalidInput,
          "universal_map: assignment must cover every materialized index");
  const int top = std::min(target.top(), f.ring.precision());
  TowerModule src = f.tower();
  TowerModule dst = target;
  for (TowerModule* t : {&src, &dst}) {
    t->levels.erase(t->levels.begin() + top + 1, t->levels.end());
    t->transitions.erase(t->transitions.begin() + top, t->transitions.end());
  }
  TowerMorphism out{src, dst, {}};
  for (int k = 0; k <= top; ++k) {
    const size_t dk = f.ring.level_dim(k);
    const auto mons = target.levels[k].monomial_actions();
    const MatrixK down = target.transition(target.top(), k);
    MatrixK map(f.ring.p(), target.levels[k].dim(), f.materialized() * dk);
    for (size_t z = 0; z < assignment.size(); ++z) {
      require(assignment[z].rows() == target.levels[target.top()].dim() && assignment[z].cols() == 1,
              ErrorKind::InvalidInput, "universal_map: element has wrong extent");
      const MatrixK e = down * assignment[z];
      for (size_t a = 0; a < dk; ++a) map.set_block(0, z * dk + a, mons[a] * e);
    }
    out.maps.push_back(std::move(map));
  }
  return out;
}

void IndTorsionModule::validate() const {
  require(transitions.size() + 1 == stages.size(), ErrorKind::InvalidInput,
          "ind-torsion: need one transition per adjacent pair of stages");
  for (int t = 0; t <= budget(); ++t) {
    const std::string at = " at stage " + std::to_string(t);
    stages[t].validate();
    require(stages[t].killed_by_power(t + 1), ErrorKind::InvalidInput,
            "ind-torsion: stage not killed by m^{t+1}" + at);
    if (t == budget()) break;
    const MatrixK& i = transitions[t];
    require(i.rows() == stages[t + 1].dim() && i.cols() == stages[t].dim(), ErrorKind::InvalidInput,
            "ind-torsion: transition extents" + at);
    require(stages[t + 1].is_linear_map_from(stages[t], i), ErrorKind::InvalidInput,
            "ind-torsion: transition not linear" + at);
    require(rank(i) == stages[t].dim(), ErrorKind::InvalidInput,
            "ind-torsion: transition not injective" + at);
  }
}

namespace {

// Basis of ker(m^e) on m.
MatrixK power_kernel(const LevelModule& m, int e) {
  if (e > m.level() || m.dim() == 0) return MatrixK::identity(m.p(), m.dim());
  const auto mons = m.monomial_actions();
  MatrixK eqs(m.p(), 0, m.dim());
  for (size_t idx = 0; idx < mons.size(); ++idx)
    if (m.ring().degree(idx) == e) eqs = vstack(eqs, mons[idx]);
  return kernel(eqs);
}

IndTorsionModule chain_of_subspaces(const LevelModule& ambient, const std::vector<MatrixK>& spans) {
  IndTorsionModule out{ambient.ring(), {}, {}};
  std::vector<Submodule> subs;
  for (size_t s = 0; s < spans.size(); ++s) {
    subs.push_back(submodule(ambient, spans[s]));
    out.stages.push_back(subs.back().module.relabeled(static_cast<int>(s)));
  }
  for (size_t s = 0; s + 1 < subs.size(); ++s)
    out.transitions.push_back(subs[s + 1].retraction * subs[s].inclusion);
  return out;
}

}  // namespace

IndTorsionModule ind_from_torsion_module(const LevelModule& m, int budget) {
  require(budget >= 0 && budget <= m.ring().precision(), ErrorKind::PrecisionExceeded,
          "ind_from_torsion_module: budget exceeds precision");
  std::vector<MatrixK> spans;
  for (int t = 0; t <= budget; ++t) spans.push_back(power_kernel(m, t + 1));
  return chain_of_subspaces(m, spans);
}

namespace {

// Images in M_j of ker(m^t) on M_K for t = 1..K-j.
std::vector<MatrixK> kernel_chain(const TowerModule& tower, int kernel_level, int j) {
  std::vector<MatrixK> chain;
  const MatrixK down = tower.transition(kernel_level, j);
  const size_t dj = tower.levels[j].dim();
  for (int t = 1; t <= kernel_level - j; ++t) {
    MatrixK img = down * power_kernel(tower.levels[kernel_level], t);
    chain.push_back(img.cols() ? column_space(img) : MatrixK(tower.ring.p(), dj, 0));
  }
  return chain;
}

}  // namespace

GammaResult gamma_torsion(const CompletedModule& m) {
  const TowerModule& tower = m.tower;
  const int n_top = tower.top();
  const int j = std::max(0, (n_top - 1) / 2);
  GammaResult out{false, 0, j, false, LevelModule::zero(tower.ring, 0), {tower.ring, {}, {}}, {}, ""};
  std::ostringstream rep;
  auto chain = kernel_chain(tower, n_top, j);
  for (const auto& g : chain) out.chain_dims.push_back(g.cols());
  int stable = -1;
  for (size_t t = 0; t + 1 < chain.size(); ++t)
    if (same_span(chain[t], chain[t + 1])) {
      stable = static_cast<int>(t) + 1;
      break;
    }
  if (stable < 0) {
    rep << "torsion submodule undetermined at precision N=" << n_top;
    out.report = rep.str();
    return out;
  }
  out.determined = true;
  out.stable_t = stable;
  // sanity: later members of the computed chain must agree as well
  for (size_t t = stable; t < chain.size(); ++t)
    require(same_span(chain[stable - 1], chain[t]), ErrorKind::Undetermined,
            "gamma_torsion: kernel chain grew again after stabilizing");
  if (n_top >= 1 && n_top - 1 > j) {
    auto lower = kernel_chain(tower, n_top - 1, j);
    out.precision_stable = true;
    for (size_t t = 0; t < lower.size(); ++t)
      if (!same_span(lower[t], chain[t])) out.precision_stable = false;
  }
  std::vector<MatrixK> spans(chain.begin(), chain.begin() + std::min<size_t>(stable + 1, chain.size()));
  while (static_cast<int>(spans.size()) < stable + 1) spans.push_back(chain[stable - 1]);
  out.chain = chain_of_subspaces(tower.levels[j], spans);
  out.module = out.chain.stages[stable - 1];
  rep << "torsion submodule stabilizes at t=" << stable << " (ker m^t = ker m^{t+1}) in level " << j
      << ", dim " << out.module.dim() << "; "
      << (out.precision_stable ? "precision-stable" : "not confirmed at N-1");
  out.report = rep.str();
  return out;
}

TauCheck check_tau_bijective(const FgPresentation& m, int k) {
  const Ring& ring = m.ring();
  const int n_top = ring.precision();
  require(k >= 0 && k <= n_top, ErrorKind::PrecisionExceeded, "tau check: level exceeds precision");
  Quotient top = m.level(n_top);
  Quotient src = m.level(k);
  MatrixK to_target = top.projection;
  LevelModule target = top.module;
  if (k < n_top) {
    Quotient bc = base_change(top.module, k);
    to_target = bc.projection * to_target;
    target = bc.module;
  }
  const MatrixK lift = ring.free_lift(k, n_top, m.rank);
  TauCheck out;
  out.level = k;
  out.source_dim = src.module.dim();
  out.target_dim = target.dim();
  require((to_target * lift * kernel(src.projection)).is_zero(), ErrorKind::PreconditionFailed,
          "tau check: relations do not vanish in the completion");
  out.witness = to_target * lift * src.section;
  out.bijective = out.source_dim == out.target_dim && rank(out.witness) == out.target_dim &&
                  target.is_linear_map_from(src.module, out.witness);
  return out;
}

bool HomIntoComplete::agrees() const {
  return std::all_of(agrees_with_completion.begin(), agrees_with_completion.end(),
                     [](bool b) { return b; });
}

HomIntoComplete hom_into_complete(const FgPresentation& m, const TowerModule& target) {
  const Ring& ring = m.ring();
  const int top = std::min(target.top(), ring.precision());
  const uint32_t p = ring.p();
  HomIntoComplete out;
  std::vector<Submodule> subs;
  for (int k = 0; k <= top; ++k) {
    const LevelModule& nk = target.levels[k];
    const size_t d = nk.dim();
    LevelModule tuples = direct_sum(std::vector<LevelModule>(m.rank, nk));
    // sum_i rel(i, c) n_i = 0 for every relation c
    MatrixK eqs(p, m.num_relations() * d, m.rank * d);
    for (size_t c = 0; c < m.num_relations(); ++c)
      for (size_t i = 0; i < m.rank; ++i)
        eqs.set_block(c * d, i * d, nk.series_action(m.relations(i, c)));
    subs.push_back(submodule(tuples, kernel(eqs)));
    out.hom.levels.push_back(subs.back().module);

    // Independent route: A_k-linear maps out of the level-k completion, evaluated at generators.
    Quotient mk = m.level(k);
    HomModule h = hom_level(mk.module, nk);
    const size_t dk = ring.level_dim(k);
    MatrixK evals(p, m.rank * d, h.basis.size());
    for (size_t b = 0; b < h.basis.size(); ++b)
      for (size_t g = 0; g < m.rank; ++g)
        evals.set_block(g * d, b, h.basis[b] * mk.projection.column(g * dk));
    out.agrees_with_completion.push_back(
        same_span(evals.cols() ? column_space(evals) : MatrixK(p, m.rank * d, 0), subs.back().inclusion));
  }
  for (int k = 0; k < top; ++k) {
    std::vector<MatrixK> blocks(m.rank, target.transitions[k]);
    out.hom.transitions.push_back(subs[k].retraction * block_diag(blocks, p) * subs[k + 1].inclusion);
  }
  return out;
}

bool FreeCompletionCheck::all_equal() const {
  return std::all_of(level_equal.begin(), level_equal.end(), [](bool b) { return b; });
}

FreeCompletionCheck completion_of_free(const Ring& ring, size_t z) {
  CompletedModule c = complete_fg(FgPresentation::free(ring, z));
  TowerModule d = DecayingFreeModule::finite(ring, z).tower();
  FreeCompletionCheck out;
  for (int k = 0; k <= ring.precision(); ++k) {
    bool eq = c.tower.levels[k] == d.levels[k];
    if (k < ring.precision()) eq = eq && c.tower.transitions[k] == d.transitions[k];
    out.level_equal.push_back(eq);
  }
  return out;
}

}  // namespace adic
