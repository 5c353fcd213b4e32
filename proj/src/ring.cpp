#include "adic/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "adic/error.hpp"

namespace adic {

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

namespace {

void monomials_of_degree(int n, int d, int var, Monomial& cur, std::vector<Monomial>& out) {
  if (var == n - 1) {
    cur[var] = d;
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[var] = e;
    monomials_of_degree(n, d - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> graded_lex_monomials(int n, int max_degree) {
  std::vector<Monomial> out;
  Monomial cur(n, 0);
  for (int d = 0; d <= max_degree; ++d) monomials_of_degree(n, d, 0, cur, out);
  return out;
}

Ring::Ring(RingConfig cfg) {
  require(is_prime(cfg.p), ErrorKind::InvalidInput, "ring: p=" + std::to_string(cfg.p) + " is not prime");
  require(cfg.n >= 1, ErrorKind::InvalidInput, "ring: need n >= 1");
  require(cfg.N >= 0, ErrorKind::InvalidInput, "ring: need N >= 0");
  auto d = std::make_shared<Data>();
  d->cfg = cfg;
  d->basis = graded_lex_monomials(cfg.n, cfg.N);
  for (const auto& m : d->basis) d->degrees.push_back(monomial_degree(m));
  for (int k = 0; k <= cfg.N; ++k)
    d->level_dims.push_back(static_cast<size_t>(
        std::count_if(d->degrees.begin(), d->degrees.end(), [k](int x) { return x <= k; })));

  std::map<Monomial, size_t> index;
  for (size_t i = 0; i < d->basis.size(); ++i) index[d->basis[i]] = i;
  const size_t b = d->basis.size();
  d->products.assign(b * b, -1);
  for (size_t i = 0; i < b; ++i)
    for (size_t j = 0; j < b; ++j) {
      if (d->degrees[i] + d->degrees[j] > cfg.N) continue;
      Monomial m(cfg.n);
      for (int v = 0; v < cfg.n; ++v) m[v] = d->basis[i][v] + d->basis[j][v];
      d->products[i * b + j] = static_cast<int32_t>(index.at(m));
    }

  d->var_actions.resize(cfg.N + 1);
  for (int k = 0; k <= cfg.N; ++k) {
    const size_t dk = d->level_dims[k];
    for (int v = 0; v < cfg.n; ++v) {
      MatrixK x(cfg.p, dk, dk);
      const size_t vi = 1 + static_cast<size_t>(v);
      for (size_t a = 0; a < dk; ++a) {
        if (d->degrees[a] + 1 > k) continue;
        x(static_cast<size_t>(d->products[a * b + vi]), a) = 1;
      }
      d->var_actions[k].push_back(std::move(x));
    }
  }
  d_ = std::move(d);
}

size_t Ring::level_dim(int k) const {
  require(k >= 0 && k <= d_->cfg.N, ErrorKind::PrecisionExceeded,
          "level " + std::to_string(k) + " exceeds precision N=" + std::to_string(d_->cfg.N));
  return d_->level_dims[k];
}

std::optional<size_t> Ring::index_of(const Monomial& m) const {
  if (static_cast<int>(m.size()) != d_->cfg.n) return std::nullopt;
  for (auto e : m)
    if (e < 0) return std::nullopt;
  auto it = std::find(d_->basis.begin(), d_->basis.end(), m);
  if (it == d_->basis.end()) return std::nullopt;
  return static_cast<size_t>(it - d_->basis.begin());
}

std::optional<size_t> Ring::product_index(size_t a, size_t b) const {
  const int32_t r = d_->products[a * d_->basis.size() + b];
  if (r < 0) return std::nullopt;
  return static_cast<size_t>(r);
}

MatrixK Ring::monomial_action(size_t m, int k) const {
  const size_t dk = level_dim(k);
  MatrixK x(p(), dk, dk);
  for (size_t a = 0; a < dk; ++a) {
    if (d_->degrees[a] + d_->degrees[m] > k) continue;
    x(*product_index(a, m), a) = 1;
  }
  return x;
}

const MatrixK& Ring::variable_action(int i, int k) const {
  level_dim(k);
  return d_->var_actions[k][i];
}

MatrixK Ring::free_projection(int from, int to, size_t rank) const {
  const size_t df = level_dim(from), dt = level_dim(to);
  require(to <= from, ErrorKind::InvalidInput, "free_projection: target level above source");
  MatrixK out(p(), dt * rank, df * rank);
  for (size_t g = 0; g < rank; ++g)
    for (size_t a = 0; a < dt; ++a) out(g * dt + a, g * df + a) = 1;
  return out;
}

MatrixK Ring::free_lift(int to, int from, size_t rank) const {
  return transpose(free_projection(from, to, rank));
}

LevelRing make_level_ring(const Ring& ring, int k) {
  require(k >= 0, ErrorKind::InvalidInput, "negative level");
  const size_t dk = ring.level_dim(k);
  LevelRing out;
  out.level = k;
  for (size_t i = 0; i < dk; ++i) out.basis.push_back(ring.monomial(i));
  return out;
}

}  // namespace adic
