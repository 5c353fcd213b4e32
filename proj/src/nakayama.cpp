#include "adic/nakayama.hpp"

#include <algorithm>
#include <sstream>

#include "adic/error.hpp"

namespace adic {

int TowerComplex::top_level() const { return terms.empty() ? ring.precision() : terms.front().top(); }

LevelComplex TowerComplex::level(int k) const {
  LevelComplex out{ring, k, lo, {}, {}};
  for (const auto& t : terms) out.terms.push_back(t.levels[k]);
  for (const auto& d : diffs) out.diffs.push_back(d[k]);
  return out;
}

void TowerComplex::validate() const {
  require(kinds.size() == terms.size() && (terms.empty() || diffs.size() + 1 == terms.size()),
          ErrorKind::InvalidInput, "tower complex: inconsistent term and differential counts");
  const int top = top_level();
  for (int k = 0; k <= top; ++k) level(k).validate();
  for (size_t d = 0; d < diffs.size(); ++d)
    for (int k = 0; k < top; ++k)
      require(diffs[d][k] * terms[d].transitions[k] == terms[d + 1].transitions[k] * diffs[d][k + 1],
              ErrorKind::InvalidInput,
              "tower complex: d not compatible with transitions in degree " + std::to_string(lo + static_cast<int>(d)) +
                  " at level " + std::to_string(k));
}

TowerComplex tower_complex(const FgComplex& c) {
  require(c.all_free(), ErrorKind::PreconditionFailed, "tower_complex: terms must be free");
  std::vector<DecayingFreeModule> terms;
  for (const auto& t : c.terms) terms.push_back(DecayingFreeModule::finite(c.ring, t.rank));
  return decaying_free_complex(c.ring, c.lo, terms, c.diffs);
}

TowerComplex decaying_free_complex(const Ring& ring, int lo, const std::vector<DecayingFreeModule>& terms,
                                   const std::vector<SeriesMatrix>& diffs) {
  TowerComplex out{ring, lo, {}, {}, {}};
  for (const auto& t : terms) {
    out.terms.push_back(t.tower());
    out.kinds.push_back(TowerComplex::TermKind::AdicallyFree);
  }
  for (size_t d = 0; d < diffs.size(); ++d) {
    require(diffs[d].cols() == terms[d].size && diffs[d].rows() == terms[d + 1].size, ErrorKind::InvalidInput,
            "decaying_free_complex: differential extents in degree " + std::to_string(lo + static_cast<int>(d)));
    std::vector<MatrixK> levels;
    for (int k = 0; k <= ring.precision(); ++k) levels.push_back(diffs[d].level_matrix(k));
    out.diffs.push_back(std::move(levels));
  }
  out.validate();
  return out;
}

std::string to_string(CompletenessVerdict v) {
  switch (v) {
    case CompletenessVerdict::AdicallyFreeTerms: return "AdicallyFreeTerms";
    case CompletenessVerdict::AdicallyProjectiveTerms: return "AdicallyProjectiveTerms";
    case CompletenessVerdict::CompleteCohomology: return "CompleteCohomology";
    case CompletenessVerdict::FgCohomology: return "FgCohomology";
    case CompletenessVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// H^i over the levels with induced transitions; true when each transition is onto
// with kernel m^{k+1} H_{k+1}.
bool cohomology_tower_ok(const TowerComplex& c, int i, std::vector<size_t>* dims) {
  const int top = c.top_level();
  std::vector<Subquotient> hs;
  std::vector<LevelComplex> levels;
  for (int k = 0; k <= top; ++k) {
    levels.push_back(c.level(k));
    hs.push_back(cohomology(levels.back(), i));
    if (dims) dims->push_back(hs.back().module.dim());
  }
  if (i < c.lo || i > c.hi()) return true;
  const TowerModule& t = c.terms[i - c.lo];
  bool ok = true;
  for (int k = 0; k < top; ++k) {
    const MatrixK f = induced_map(hs[k + 1], hs[k], t.transitions[k]);
    const bool onto = rank(f) == hs[k].module.dim();
    const MatrixK ker = kernel(f);
    const MatrixK expect = hs[k + 1].module.ideal_power_image(k + 1);
    ok = ok && onto && same_span(ker.cols() ? ker : MatrixK(f.prime(), f.cols(), 0), expect);
  }
  return ok;
}

}  // namespace

CompletenessCertificate completeness_certificate(const TowerComplex& c) {
  CompletenessCertificate out;
  const bool all_free = std::all_of(c.kinds.begin(), c.kinds.end(),
                                    [](auto k) { return k == TowerComplex::TermKind::AdicallyFree; });
  if (all_free) {
    out.verdict = CompletenessVerdict::AdicallyFreeTerms;
    for (size_t d = 0; d < c.terms.size(); ++d)
      out.evidence.push_back("degree " + std::to_string(c.lo + static_cast<int>(d)) + ": adically free, rank " +
                             std::to_string(c.terms[d].levels[0].dim()));
    return out;
  }
  bool projective = true;
  for (size_t d = 0; d < c.terms.size(); ++d) {
    const bool p = is_formally_projective(c.terms[d]).overall;
    projective = projective && p;
    out.evidence.push_back("degree " + std::to_string(c.lo + static_cast<int>(d)) +
                           (p ? ": formally projective" : ": not formally projective"));
  }
  if (projective) {
    out.verdict = CompletenessVerdict::AdicallyProjectiveTerms;
    return out;
  }
  bool complete = true;
  for (int i = c.lo; i <= c.hi(); ++i) {
    const bool ok = cohomology_tower_ok(c, i, nullptr);
    complete = complete && ok;
    out.evidence.push_back("H^" + std::to_string(i) + (ok ? " satisfies" : " fails") + " the tower invariant up to level " +
                           std::to_string(c.top_level()));
  }
  out.verdict = complete ? CompletenessVerdict::CompleteCohomology : CompletenessVerdict::Unknown;
  return out;
}

CompletenessCertificate completeness_certificate(const FgComplex& c) {
  CompletenessCertificate out;
  if (c.all_free()) {
    out.verdict = CompletenessVerdict::AdicallyFreeTerms;
    out.evidence.push_back("finite free terms are complete");
  } else {
    out.verdict = CompletenessVerdict::FgCohomology;
    out.evidence.push_back("finitely presented terms over a noetherian complete ring");
  }
  return out;
}

CompletenessCertificate completeness_certificate(const LevelComplex&) {
  return CompletenessCertificate{CompletenessVerdict::Unknown, {"terms are single-level modules, not towers"}};
}

FreeReplacement free_to_complete(const FgComplex& m) {
  const Ring& ring = m.ring;
  const int n_top = ring.precision();
  FreeReplacement out{m, TowerComplex{ring, 0, {}, {}, {}}, FgChainMap{m, m, {}}, false, ""};
  if (m.all_free()) {
    for (int d = m.lo; d <= m.hi(); ++d) out.to_input.maps.emplace(d, SeriesMatrix::identity(ring, m.term(d).rank));
  } else {
    const LevelComplex top = m.level(n_top);
    for (int d = m.lo; d < m.hi(); ++d)
      require(top.diff(d).is_zero(), ErrorKind::PreconditionFailed,
              "free_to_complete: supported for free terms or zero differentials only");
    FgComplex q{ring, 0, {}, {}};
    std::map<int, size_t> offset;  // generator offset of the resolution of M^d inside Q^d
    std::map<int, SeriesMatrix> aug;
    for (int d = m.lo; d <= m.hi(); ++d) {
      Resolution r = resolve_free_fg(m.term(d), ring.vars());
      if (!r.verified) out.diagnostic += "resolution of degree " + std::to_string(d) + ": " + r.diagnostic + "; ";
      offset[d] = q.in_range(d) ? q.term(d).rank : 0;
      aug.emplace(d, r.augmentation);
      q = direct_sum(q, shift(r.complex, -d));
    }
    out.q = q;
    out.to_input = FgChainMap{q, m, {}};
    for (int d = m.lo; d <= m.hi(); ++d) {
      SeriesMatrix f(ring, m.term(d).rank, q.term(d).rank);
      const SeriesMatrix& a = aug.at(d);
      for (size_t r = 0; r < a.rows(); ++r)
        for (size_t c = 0; c < a.cols(); ++c) f(r, offset[d] + c) = a(r, c);
      out.to_input.maps.emplace(d, std::move(f));
    }
  }
  out.p = tower_complex(out.q);
  out.to_input.validate();
  out.quasi_iso = true;
  const int j = std::max(0, n_top - 2);
  const int lo = std::min(out.q.lo, m.lo), hi = std::max(out.q.hi(), m.hi());
  for (int d = lo; d <= hi && !m.terms.empty(); ++d) {
    StableCohomology hq = stable_cohomology(out.q, d, j), hm = stable_cohomology(m, d, j);
    const MatrixK f = induced_map(out.to_input, hq, hm);
    if (hq.h.module.dim() != hm.h.module.dim() || rank(f) != hm.h.module.dim()) {
      out.quasi_iso = false;
      out.diagnostic += "H^" + std::to_string(d) + " not matched at level " + std::to_string(j) + "; ";
    }
  }
  return out;
}

NakayamaGenerators nakayama_generators(const TowerComplex& p, int i0) {
  for (auto k : p.kinds)
    require(k == TowerComplex::TermKind::AdicallyFree, ErrorKind::PreconditionFailed,
            "nakayama_generators: terms must be adically free");
  const int top = p.top_level();
  NakayamaGenerators out;
  out.degree = i0;
  const LevelComplex c0 = p.level(0);
  for (int d = i0 + 1; d <= p.hi(); ++d)
    require(cohomology(c0, d).module.dim() == 0, ErrorKind::PreconditionFailed,
            "nakayama_generators: sup mismatch, H^" + std::to_string(d) + "(A_0 (x) P) != 0");
  const Subquotient l0 = cohomology(c0, i0);
  out.l0_dim = l0.module.dim();
  const LevelComplex cn = p.level(top);
  const uint32_t prime = p.ring.p();
  if (i0 < p.lo || i0 > p.hi()) {
    out.generators = MatrixK(prime, 0, 0);
    out.generates_at_level.assign(top + 1, true);
    out.verified = true;
    return out;
  }
  const TowerModule& term = p.terms[i0 - p.lo];
  const MatrixK zn = kernel(cn.diff(i0));
  const MatrixK theta = term.transition(top, 0);
  const MatrixK b0 = c0.diff(i0 - 1);
  MatrixK gens(prime, cn.term(i0).dim(), 0);
  for (size_t g = 0; g < l0.reps.cols(); ++g) {
    // a cycle at the top level whose class lifts the g-th class of L_0
    auto c = solve(hstack(theta * zn, b0), l0.reps.column(g));
    require(c.has_value(), ErrorKind::PreconditionFailed,
            "nakayama_generators: class of L_0 does not lift to the top level");
    gens = hstack(gens, zn * c->block(0, 0, zn.cols(), 1));
  }
  out.generators = gens;
  out.verified = true;
  for (int k = 0; k <= top; ++k) {
    const LevelComplex ck = p.level(k);
    const MatrixK gk = term.transition(top, k) * gens;
    const MatrixK span = generated_submodule(ck.term(i0), hstack(gk, ck.diff(i0 - 1)));
    const bool ok = same_span(span, kernel(ck.diff(i0)));
    out.generates_at_level.push_back(ok);
    out.verified = out.verified && ok;
  }
  return out;
}

KunnethWitness kunneth_top(const LevelComplex& m, const LevelComplex& n, int i, int j) {
  const int sm = profile(m).sup, sn = profile(n).sup;
  require(i >= sm && j >= sn, ErrorKind::PreconditionFailed, "kunneth_top: degrees below the top cohomology");
  TensorComplex t = tensor(m, n);
  Subquotient left = cohomology(m, i), right = cohomology(n, j);
  TensorProduct product = tensor_level(left.module, right.module);
  KunnethWitness out{i, j, left, right, product, cohomology(t.complex, i + j), {}};
  const uint32_t prime = m.ring.p();
  const size_t src = out.left.module.dim() * out.right.module.dim();
  MatrixK over_field(prime, out.total.module.dim(), src);
  auto piece = t.pieces.find({i, j});
  if (piece != t.pieces.end() && src > 0) {
    MatrixK embed(prime, t.complex.term(i + j).dim(), piece->second.module.dim());
    embed.set_block(t.offsets.at({i, j}), 0, MatrixK::identity(prime, piece->second.module.dim()));
    over_field = out.total.reduce * embed * piece->second.project * kron(out.left.reps, out.right.reps);
  }
  out.iso = over_field * out.product.section;
  out.well_defined = out.iso * out.product.project == over_field;
  out.linear = out.total.module.is_linear_map_from(out.product.module, out.iso);
  out.bijective = out.iso.rows() == out.iso.cols() && rank(out.iso) == out.iso.rows();
  return out;
}

ConservativityEvidence conservativity_probe(const FgComplex& m) {
  const FgProfile prof = fg_profile(m);
  require(prof.profile.sup != kMinusInfinity, ErrorKind::InvalidInput, "conservativity_probe: input is zero");
  ConservativityEvidence out;
  out.sup = prof.profile.sup;
  const TorsionCohomology tc = torsion_cohomology(derived_tensor_A0(m), out.sup);
  out.tor_dim = tc.value.h.module.dim();
  out.witness = out.tor_dim ? tc.value.h.reps.column(0) : MatrixK(m.ring.p(), 0, 0);
  out.kunneth_dim = minimal_generator_count(stable_cohomology(m, out.sup, prof.level).h.module);
  out.determined = tc.determined && prof.stable;
  return out;
}

NonCompleteCandidate non_complete_h0_candidate(const Ring& ring, size_t window, int max_level) {
  require(ring.vars() == 1, ErrorKind::InvalidInput, "non_complete_h0_candidate: needs one variable");
  require(ring.precision() >= max_level, ErrorKind::PrecisionExceeded, "non_complete_h0_candidate: increase N");
  require(window >= 1, ErrorKind::InvalidInput, "non_complete_h0_candidate: empty window");
  SeriesMatrix d(ring, window + 1, window);
  for (size_t i = 0; i < window; ++i) {
    d(i, i) = TruncatedSeries::constant(ring, 1);
    d(i + 1, i) = -TruncatedSeries::variable(ring, 0);
  }
  NonCompleteCandidate out{
      decaying_free_complex(ring, -1,
                            {DecayingFreeModule::windowed(ring, window), DecayingFreeModule::windowed(ring, window + 1)},
                            {d}),
      {}, {}, {}, false, ""};
  for (int k = 0; k <= max_level; ++k) {
    const MatrixK dk = out.complex.diffs[0][k];
    out.injective_by_level.push_back(rank(dk) == dk.cols());
  }
  out.certificate = completeness_certificate(out.complex);
  out.h0_tower_invariant = cohomology_tower_ok(out.complex, 0, &out.h0_dims);
  out.h0_dims.resize(std::min(out.h0_dims.size(), static_cast<size_t>(max_level + 1)));

  const bool injective = std::all_of(out.injective_by_level.begin(), out.injective_by_level.end(), [](bool b) { return b; });
  std::ostringstream r;
  r << "candidate d(delta_i) = delta_i - t delta_{i+1}, window " << window << "\n";
  r << "d injective at levels 0.." << max_level << ": " << (injective ? "yes" : "no") << "\n";
  r << "certificate: " << to_string(out.certificate.verdict) << "\n";
  r << "H^0 dims by level:";
  for (auto v : out.h0_dims) r << " " << v;
  r << "\nH^0 tower invariant on the window: " << (out.h0_tower_invariant ? "holds" : "fails") << "\n";
  r << "verdict: consistent with the known example of a complex of adically free modules whose H^0 is not "
       "adically complete; non-completeness of H^0 is not certified at finite precision\n";
  out.report = r.str();
  return out;
}

}  // namespace adic
