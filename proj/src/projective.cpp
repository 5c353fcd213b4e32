#include "adic/projective.hpp"

#include "adic/error.hpp"

namespace adic {

namespace {

MatrixK max_ideal_image(const LevelModule& m) {
  MatrixK acc(m.p(), m.dim(), 0);
  for (int i = 0; i < m.ring().vars(); ++i) acc = hstack(acc, m.action(i));
  return acc.cols() ? column_space(acc) : acc;
}

// The unique linear map out of a free module P with given values on generators.
MatrixK extend_from_generators(const LevelModule& p, const MatrixK& gens, const LevelModule& target,
                               const MatrixK& values) {
  if (p.dim() == 0) return MatrixK(p.p(), target.dim(), 0);
  auto inv = inverse(free_map(p, gens));
  require(inv.has_value(), ErrorKind::PreconditionFailed,
          "module is not free on its minimal generators at level " + std::to_string(p.level()));
  return free_map(target, values) * *inv;
}

MatrixK splitting_at(const LevelModule& f, const LevelModule& p, const MatrixK& alpha) {
  const MatrixK gens = minimal_generators(p);
  auto pre = solve(alpha, gens);
  require(pre.has_value(), ErrorKind::PreconditionFailed,
          "alpha is not surjective at level " + std::to_string(p.level()));
  return extend_from_generators(p, gens, f, *pre);
}

}  // namespace

size_t minimal_generator_count(const LevelModule& m) { return m.dim() - rank(max_ideal_image(m)); }

MatrixK minimal_generators(const LevelModule& m) {
  MatrixK seen = max_ideal_image(m);
  MatrixK gens(m.p(), m.dim(), 0);
  for (size_t i = 0; i < m.dim() && rank(seen) < m.dim(); ++i) {
    MatrixK e(m.p(), m.dim(), 1);
    e(i, 0) = 1;
    MatrixK cand = hstack(seen, e);
    if (rank(cand) > rank(seen)) {
      seen = cand;
      gens = hstack(gens, e);
    }
  }
  return gens;
}

MatrixK free_map(const LevelModule& m, const MatrixK& gens) {
  const std::vector<MatrixK> mons = m.monomial_actions();
  const size_t da = mons.size();
  MatrixK out(m.p(), m.dim(), gens.cols() * da);
  for (size_t g = 0; g < gens.cols(); ++g) {
    const MatrixK v = gens.column(g);
    for (size_t a = 0; a < da; ++a) out.set_block(0, g * da + a, mons[a] * v);
  }
  return out;
}

bool is_free_level(const LevelModule& m) {
  const size_t r = minimal_generator_count(m);
  if (r * m.ring().level_dim(m.level()) != m.dim()) return false;
  return rank(free_map(m, minimal_generators(m))) == m.dim();
}

ProjectivityVerdict is_formally_projective(const TowerModule& m) {
  ProjectivityVerdict out;
  for (const auto& l : m.levels) {
    out.generator_counts.push_back(minimal_generator_count(l));
    out.by_level.push_back(is_free_level(l));
    out.overall = out.overall && out.by_level.back();
  }
  return out;
}

SplittingTower lift_splittings(const DecayingFreeModule& f, const TowerModule& p, const std::vector<MatrixK>& alpha) {
  const int top = p.top();
  SplittingTower out{f.tower(), p, alpha, {}, false, ""};
  require(out.free.top() >= top && static_cast<int>(alpha.size()) == top + 1, ErrorKind::InvalidInput,
          "lift_splittings: tower lengths do not match");
  for (int k = 0; k <= top; ++k) {
    const LevelModule& fk = out.free.levels[k];
    const LevelModule& pk = p.levels[k];
    require(alpha[k].rows() == pk.dim() && alpha[k].cols() == fk.dim(), ErrorKind::InvalidInput,
            "lift_splittings: alpha extents at level " + std::to_string(k));
    require(pk.is_linear_map_from(fk, alpha[k]), ErrorKind::InvalidInput,
            "lift_splittings: alpha not linear at level " + std::to_string(k));
    require(rank(alpha[k]) == pk.dim(), ErrorKind::PreconditionFailed,
            "lift_splittings: alpha not surjective at level " + std::to_string(k));
    require(is_free_level(pk), ErrorKind::PreconditionFailed,
            "lift_splittings: P is not projective at level " + std::to_string(k));
    if (k < top)
      require(alpha[k] * out.free.transitions[k] == p.transitions[k] * alpha[k + 1], ErrorKind::InvalidInput,
              "lift_splittings: alpha not compatible with transitions at level " + std::to_string(k));
  }

  out.beta.push_back(splitting_at(out.free.levels[0], p.levels[0], alpha[0]));
  for (int k = 0; k < top; ++k) {
    const LevelModule& f1 = out.free.levels[k + 1];
    const LevelModule& p1 = p.levels[k + 1];
    const MatrixK& theta_f = out.free.transitions[k];
    const MatrixK& theta_p = p.transitions[k];
    MatrixK b1 = splitting_at(f1, p1, alpha[k + 1]);
    // alpha_k chi = 0, so chi lands in L_k = ker alpha_k
    MatrixK chi = out.beta[k] * theta_p - theta_f * b1;
    MatrixK kb = kernel(alpha[k + 1]);
    MatrixK gens = minimal_generators(p1);
    auto c = solve(theta_f * kb, chi * gens);
    require(c.has_value(), ErrorKind::PreconditionFailed,
            "lift_splittings: correction does not lift to ker alpha at level " + std::to_string(k + 1));
    MatrixK chi_lift = extend_from_generators(p1, gens, f1, kb * *c);
    out.beta.push_back(b1 + chi_lift);
  }
  out.verified = check_splittings(out, &out.diagnostic);
  return out;
}

bool check_splittings(const SplittingTower& s, std::string* diagnostic) {
  const int top = s.target.top();
  for (int k = 0; k <= top; ++k) {
    const std::string at = " at level " + std::to_string(k);
    if (!(s.alpha[k] * s.beta[k]).is_identity()) {
      *diagnostic = "alpha o beta != id" + at;
      return false;
    }
    if (!s.free.levels[k].is_linear_map_from(s.target.levels[k], s.beta[k])) {
      *diagnostic = "beta not linear" + at;
      return false;
    }
    if (k < top && !(s.free.transitions[k] * s.beta[k + 1] == s.beta[k] * s.target.transitions[k])) {
      *diagnostic = "compatibility square fails" + at;
      return false;
    }
  }
  return true;
}

SummandCertificate summand_certificate(const TowerModule& p) {
  const int top = p.top();
  const MatrixK gens = minimal_generators(p.levels[top]);
  DecayingFreeModule f = DecayingFreeModule::finite(p.ring, gens.cols());
  std::vector<MatrixK> alpha;
  for (int k = 0; k <= top; ++k) alpha.push_back(free_map(p.levels[k], p.transition(top, k) * gens));
  SummandCertificate out{lift_splittings(f, p, alpha), {}, true, true};
  for (int k = 0; k <= top; ++k) {
    const MatrixK e = out.splitting.beta[k] * alpha[k];
    out.idempotent = out.idempotent && e * e == e;
    // alpha restricted to im e is a linear bijection onto P_k
    const MatrixK img = column_space(e);
    const MatrixK a = alpha[k] * img;
    out.image_isomorphic = out.image_isomorphic && a.rows() == a.cols() && rank(a) == a.rows();
    out.idempotents.push_back(e);
  }
  return out;
}

IdempotentImage idempotent_image(const SeriesMatrix& e) {
  const Ring& ring = e.ring();
  const int top = ring.precision();
  require(e.rows() == e.cols(), ErrorKind::InvalidInput, "idempotent_image: not square");
  const MatrixK en = e.level_matrix(top);
  require(en * en == en, ErrorKind::InvalidInput, "idempotent_image: e is not idempotent at level N");
  IdempotentImage out{DecayingFreeModule::finite(ring, e.rows()), e, TowerModule{ring, {}, {}}, {}};
  std::vector<Submodule> subs;
  for (int k = 0; k <= top; ++k) {
    const MatrixK ek = e.level_matrix(k);
    subs.push_back(submodule(out.free.level(k), column_space(ek)));
    out.image.levels.push_back(subs.back().module);
    out.alpha.push_back(subs.back().retraction * ek);
  }
  for (int k = 0; k < top; ++k)
    out.image.transitions.push_back(subs[k].retraction * ring.free_projection(k + 1, k, e.rows()) *
                                    subs[k + 1].inclusion);
  out.image.validate();
  return out;
}

}  // namespace adic
