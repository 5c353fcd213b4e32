#include <doctest.h>

#include <random>

#include "adic/error.hpp"
#include "adic/tower.hpp"

using namespace adic;

namespace {

TruncatedSeries var(const Ring& r, int i) { return TruncatedSeries::variable(r, i); }

// Number of monomials of degree <= k in n variables, by direct enumeration.
size_t count_monomials(int n, int k) {
  size_t c = 0;
  std::vector<int> e(n, 0);
  while (true) {
    int s = 0;
    for (int v : e) s += v;
    if (s <= k) ++c;
    int i = 0;
    while (i < n && ++e[i] > k) e[i++] = 0;
    if (i == n) break;
  }
  return c;
}

FgPresentation random_presentation(std::mt19937_64& rng, const Ring& r) {
  const size_t rank = 1 + rng() % 2, rels = rng() % 3;
  SeriesMatrix m(r, rank, rels);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < rels; ++j)
      for (size_t b = 0; b < r.level_dim(2); ++b)
        if (rng() % 3 == 0) m(i, j).set_coeff(b, rng() % r.p());
  return FgPresentation(m, rank);
}

}  // namespace

TEST_CASE("complete_fg") {
  Ring r({5, 2, 4});
  auto a = complete_fg(FgPresentation::free(r, 1));
  a.tower.validate();
  for (int k = 0; k <= 4; ++k) CHECK(a.tower.levels[k].dim() == r.level_dim(k));
  auto m = complete_fg(FgPresentation::cyclic(r, {var(r, 0)}));
  m.tower.validate();
  for (int k = 0; k <= 4; ++k) CHECK(m.tower.levels[k].dim() == count_monomials(1, k));
  auto z = complete_fg(FgPresentation(SeriesMatrix::identity(r, 2), 2));
  CHECK(z.tower.is_zero());

  std::mt19937_64 rng(1);
  for (int s = 0; s < 20; ++s) complete_fg(random_presentation(rng, r)).tower.validate();
}

TEST_CASE("tower validation reports broken transitions") {
  Ring r({5, 1, 2});
  auto t = complete_fg(FgPresentation::free(r, 1)).tower;
  t.transitions[1] = MatrixK(5, t.levels[1].dim(), t.levels[2].dim());
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("decaying free modules") {
  Ring r({5, 2, 3});
  auto f = DecayingFreeModule::finite(r, 3);
  for (int k = 0; k <= 3; ++k) CHECK(f.level(k) == LevelModule::free(r, k, 3));
  CHECK(DecayingFreeModule::finite(r, 0).level(2).dim() == 0);
  auto w = DecayingFreeModule::windowed(r, 5);
  CHECK(w.materialized() == 5);
  auto w8 = w.with_window(8);
  // the first five generators keep their coordinates
  CHECK(w8.level(2).dim() == 8 * r.level_dim(2));
  CHECK(w8.tower().transitions[1].block(0, 0, 5 * r.level_dim(1), 5 * r.level_dim(2)) ==
        w.tower().transitions[1]);
  CHECK(completion_of_free(r, 1).all_equal());
  CHECK(completion_of_free(r, 3).all_equal());
}

TEST_CASE("universal map") {
  Ring r({5, 1, 4});
  auto target = complete_fg(FgPresentation::free(r, 1)).tower;
  const size_t top = target.levels[4].dim();
  auto f = DecayingFreeModule::windowed(r, 3);
  // f(z_i) = x^i * 1
  std::vector<MatrixK> assign;
  for (size_t i = 0; i < 3; ++i) {
    MatrixK v(5, top, 1);
    v(i, 0) = 1;
    assign.push_back(v);
  }
  auto phi = universal_map(f, target, assign);
  phi.validate();
  for (int k = 0; k <= 4; ++k) {
    // level-wise evaluation oracle: span of x^i for i <= min(k, 2) generates (1)
    CHECK(rank(phi.maps[k]) == target.levels[k].dim());
    for (size_t i = 0; i < 3; ++i) {
      if (static_cast<int>(i) > k) continue;
      CHECK(phi.maps[k](i, i * r.level_dim(k)) == 1);
    }
  }
  std::vector<MatrixK> zeros(3, MatrixK(5, top, 1));
  for (const auto& m : universal_map(f, target, zeros).maps) CHECK(m.is_zero());
  assign.push_back(assign[0]);
  CHECK_THROWS_AS(universal_map(f, target, assign), Error);
}

TEST_CASE("gamma torsion") {
  Ring r({5, 1, 6});
  auto x = var(r, 0);
  auto g1 = gamma_torsion(complete_fg(FgPresentation::cyclic(r, {x * x})));
  REQUIRE(g1.determined);
  CHECK(g1.stable_t == 2);
  CHECK(g1.module.dim() == 2);
  auto g2 = gamma_torsion(complete_fg(FgPresentation::free(r, 1)));
  REQUIRE(g2.determined);
  CHECK(g2.module.dim() == 0);
  auto g3 = gamma_torsion(complete_fg(direct_sum(FgPresentation::free(r, 1), FgPresentation::cyclic(r, {x}))));
  REQUIRE(g3.determined);
  CHECK(g3.module.dim() == 1);
  CHECK(g3.precision_stable);
  g3.chain.validate();
}

TEST_CASE("tau on completions") {
  Ring r({5, 2, 4});
  for (int k = 0; k <= 4; ++k) {
    CHECK(check_tau_bijective(FgPresentation::free(r, 1), k).bijective);
    auto t = check_tau_bijective(FgPresentation::cyclic(r, {var(r, 0) * var(r, 1)}), k);
    CHECK(t.bijective);
    CHECK(t.source_dim == r.level_dim(k) - (k >= 2 ? count_monomials(2, k - 2) : 0));
    CHECK(check_tau_bijective(FgPresentation(SeriesMatrix::identity(r, 1), 1), k).bijective);
  }
}

TEST_CASE("hom into a complete module") {
  Ring r({5, 1, 4});
  auto a = complete_fg(FgPresentation::free(r, 1)).tower;
  auto h = hom_into_complete(FgPresentation::free(r, 1), a);
  CHECK(h.agrees());
  for (int k = 0; k <= 4; ++k) CHECK(h.hom.levels[k].dim() == a.levels[k].dim());
  auto hx = hom_into_complete(FgPresentation::cyclic(r, {var(r, 0)}), a);
  CHECK(hx.agrees());
  for (int k = 0; k <= 4; ++k) {
    // commutant oracle: kernel of x on A_k
    CHECK(hx.hom.levels[k].dim() == kernel(var(r, 0).action(k)).cols());
  }
  auto zero = complete_fg(FgPresentation(SeriesMatrix::identity(r, 1), 1)).tower;
  for (const auto& l : hom_into_complete(FgPresentation::free(r, 2), zero).hom.levels) CHECK(l.dim() == 0);
}
