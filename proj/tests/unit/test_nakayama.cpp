#include <doctest.h>

#include "adic/error.hpp"
#include "adic/nakayama.hpp"
#include "adic/random.hpp"

using namespace adic;

namespace {

SeriesMatrix entry(const TruncatedSeries& f) {
  SeriesMatrix m(f.ring(), 1, 1);
  m(0, 0) = f;
  return m;
}

}  // namespace

TEST_CASE("completeness certificates by term kind") {
  Ring r({5, 1, 4});
  auto cand = non_complete_h0_candidate(r, 3, 4);
  CHECK(cand.certificate.verdict == CompletenessVerdict::AdicallyFreeTerms);

  auto fg = single_presentation(FgPresentation::residue_field(r), 0);
  CHECK(completeness_certificate(fg).verdict == CompletenessVerdict::FgCohomology);
  CHECK(completeness_certificate(fg.level(2)).verdict == CompletenessVerdict::Unknown);

  // a tower of A_0 in degree 0 is not projective but its cohomology is a tower
  TowerComplex t{r, 0, {complete_fg(FgPresentation::residue_field(r)).tower}, {TowerComplex::TermKind::Tower}, {}};
  t.validate();
  CHECK(completeness_certificate(t).verdict == CompletenessVerdict::CompleteCohomology);

  SeriesMatrix diag(r, 2, 2);
  diag(0, 0) = TruncatedSeries::constant(r, 1);
  TowerComplex tp{r, 0, {idempotent_image(diag).image}, {TowerComplex::TermKind::Tower}, {}};
  CHECK(completeness_certificate(tp).verdict == CompletenessVerdict::AdicallyProjectiveTerms);
}

TEST_CASE("free replacements") {
  Ring r({5, 2, 4});
  auto res = free_to_complete(single_presentation(FgPresentation::residue_field(r), 0));
  CHECK_MESSAGE(res.quasi_iso, res.diagnostic);
  CHECK(res.q.lo == -2);
  CHECK(res.q.term(-1).rank == 2);
  CHECK(completeness_certificate(res.p).verdict == CompletenessVerdict::AdicallyFreeTerms);

  auto zero = free_to_complete(FgComplex{r, 0, {}, {}});
  CHECK(zero.q.terms.empty());

  Ring r1({5, 1, 5});
  auto x = TruncatedSeries::variable(r1, 0);
  FgComplex m{r1, -1, {FgPresentation::cyclic(r1, {power(x, 2)}), FgPresentation::cyclic(r1, {x})},
              {SeriesMatrix(r1, 1, 1)}};
  m.validate();
  auto fr = free_to_complete(m);
  CHECK_MESSAGE(fr.quasi_iso, fr.diagnostic);
  CHECK(fr.q.all_free());
  CHECK(stable_cohomology(fr.q, -1, 2).h.module.dim() == 2);
  CHECK(stable_cohomology(fr.q, 0, 2).h.module.dim() == 1);

  FgComplex bad{r1, 0, {FgPresentation::cyclic(r1, {x}), FgPresentation::cyclic(r1, {x})},
                {entry(TruncatedSeries::constant(r1, 1))}};
  CHECK_THROWS_AS(free_to_complete(bad), Error);
}

TEST_CASE("Nakayama generators") {
  Ring r({5, 1, 5});
  auto x = TruncatedSeries::variable(r, 0);
  auto single = tower_complex(single_presentation(FgPresentation::free(r, 3), 0));
  auto g = nakayama_generators(single, 0);
  CHECK(g.verified);
  CHECK(g.generators.cols() == 3);

  auto mult = tower_complex(FgComplex{r, -1, {FgPresentation::free(r, 1), FgPresentation::free(r, 1)}, {entry(x)}});
  auto gm = nakayama_generators(mult, 0);
  CHECK(gm.verified);
  CHECK(gm.l0_dim == 1);
  REQUIRE(gm.generators.cols() == 1);
  CHECK(gm.generators(0, 0) != 0);  // the image of 1

  auto acyclic = tower_complex(FgComplex{r, -1, {FgPresentation::free(r, 1), FgPresentation::free(r, 1)},
                                         {entry(TruncatedSeries::constant(r, 2))}});
  auto ga = nakayama_generators(acyclic, 0);
  CHECK(ga.verified);
  CHECK(ga.generators.cols() == 0);

  CHECK_THROWS_AS(nakayama_generators(mult, -1), Error);

  Ring r2({3, 2, 4});
  for (uint64_t s = 0; s < 6; ++s) {
    Rng rng(case_seed(71, s));
    auto res = resolve_free_fg(random_presentation(rng, r2, 2, 2, 2), 2);
    auto gr = nakayama_generators(tower_complex(res.complex), 0);
    CHECK(gr.verified);
    CHECK(gr.generators.cols() == res.complex.term(0).rank);
  }
}

TEST_CASE("top-degree Kunneth isomorphism") {
  Ring r({5, 2, 1});
  for (uint64_t s = 0; s < 20; ++s) {
    Rng rng(case_seed(73, s));
    auto m = random_free_level_complex(rng, r, 1, -1, 3, 2);
    auto n = random_free_level_complex(rng, r, 1, -2, 3, 2);
    const int i = std::max(profile(m).sup, -1), j = std::max(profile(n).sup, -2);
    auto w = kunneth_top(m, n, i, j);
    CHECK(w.ok());
    // independent dimension count of the tensor of the two cohomology modules
    CHECK(w.total.module.dim() == tensor_level(cohomology(m, i).module, cohomology(n, j).module).module.dim());
  }
  auto a = LevelModule::free(r, 1, 1);
  auto k = LevelModule::residue_field(r, 1);
  auto w0 = kunneth_top(single_term(a, 0), single_term(k, 0), 0, 0);
  CHECK(w0.ok());
  CHECK(w0.total.module.dim() == 1);
  auto w1 = kunneth_top(single_term(a, 0), single_term(k, 0), 1, 0);
  CHECK(w1.ok());
  CHECK(w1.total.module.dim() == 0);
}

TEST_CASE("conservativity probes") {
  Ring r({5, 1, 5});
  auto x = TruncatedSeries::variable(r, 0);
  auto e = conservativity_probe(single_presentation(FgPresentation::residue_field(r), 0));
  CHECK(e.nonzero());
  CHECK(e.sup == 0);
  auto e3 = conservativity_probe(single_presentation(FgPresentation::cyclic(r, {power(x, 3)}), 0));
  CHECK(e3.nonzero());
  CHECK(e3.tor_dim == 1);
  CHECK(e3.agree());
  auto ek = conservativity_probe(koszul_powers(r, 1).complex);
  CHECK(ek.nonzero());
  CHECK_THROWS_AS(conservativity_probe(FgComplex{r, 0, {}, {}}), Error);
}

TEST_CASE("non-complete H0 candidate") {
  Ring r({5, 1, 6});
  auto c = non_complete_h0_candidate(r, 4, 6);
  CHECK(c.injective_by_level.size() == 7);
  for (bool b : c.injective_by_level) CHECK(b);
  CHECK(c.report.find("not certified") != std::string::npos);
  CHECK(c.h0_dims.size() == 7);
  CHECK(c.h0_dims[0] == 1);
}

TEST_CASE("conservativity on random complexes") {
  int nonzero = 0;
  for (uint64_t s = 0; s < 60; ++s) {
    Rng rng(case_seed(83, s));
    Ring r({5, 1 + static_cast<int>(s % 2), 5});
    auto c = random_fg_complex(rng, r, 2);
    if (fg_profile(c).profile.is_zero()) continue;
    ++nonzero;
    auto e = conservativity_probe(c);
    CHECK(e.nonzero());
    CHECK(e.agree());
  }
  CHECK(nonzero > 30);
}
