#include <doctest.h>

#include <random>

#include "adic/error.hpp"
#include "adic/level_module.hpp"

using namespace adic;

namespace {

SeriesMatrix one_relation(const Ring& r, const TruncatedSeries& f) {
  SeriesMatrix m(r, 1, 1);
  m(0, 0) = f;
  return m;
}

LevelModule cyclic(const Ring& r, int level, const TruncatedSeries& f) {
  return module_from_level_presentation(r, level, one_relation(r, f), 1).module;
}

// A random cyclic quotient A_k / (monomials), always a valid module.
LevelModule random_module(std::mt19937_64& rng, const Ring& r, int level) {
  SeriesMatrix rel(r, 1, 2);
  for (int c = 0; c < 2; ++c) {
    TruncatedSeries f(r);
    for (size_t i = 1; i < r.level_dim(level); ++i)
      if (rng() % 4 == 0) f.set_coeff(i, rng() % r.p());
    rel(0, c) = f;
  }
  return module_from_level_presentation(r, level, rel, 1).module;
}

}  // namespace

TEST_CASE("presentations") {
  Ring r({5, 2, 4});
  SeriesMatrix none(r, 1, 0);
  for (int k = 0; k <= 4; ++k)
    CHECK(module_from_level_presentation(r, k, none, 1).module.dim() == r.level_dim(k));
  Ring r1({5, 1, 3});
  auto q = module_from_level_presentation(r1, 2, one_relation(r1, TruncatedSeries::variable(r1, 0)), 1);
  // Oracle: corank of multiplication by x on A_2.
  CHECK(q.module.dim() == 3 - rank(TruncatedSeries::variable(r1, 0).action(2)));
  CHECK(q.module.dim() == 1);
  CHECK(module_from_level_presentation(r, 3, SeriesMatrix::identity(r, 2), 2).module.dim() == 0);
  CHECK_THROWS_AS(module_from_level_presentation(r, 3, SeriesMatrix::identity(r, 2), 3), Error);
}

TEST_CASE("validate rejects non-commuting or non-nilpotent actions") {
  Ring r({5, 2, 2});
  MatrixK a = MatrixK::from_rows(5, {{0, 1}, {0, 0}});
  MatrixK b = MatrixK::from_rows(5, {{0, 0}, {1, 0}});
  CHECK_THROWS_AS(LevelModule(r, 2, 2, {a, b}).validate(), Error);
  CHECK_THROWS_AS(LevelModule(r, 0, 2, {a, MatrixK(5, 2, 2)}).validate(), Error);
  CHECK_NOTHROW(LevelModule(r, 1, 2, {a, MatrixK(5, 2, 2)}).validate());
  CHECK_NOTHROW(LevelModule::free(r, 2, 3).validate());
}

TEST_CASE("kernel, cokernel, image contracts") {
  Ring r({5, 1, 3});
  auto f = LevelModule::free(r, 3, 2);
  LevelMap id{f, f, MatrixK::identity(5, f.dim())};
  CHECK(map_kernel(id).module.dim() == 0);
  CHECK(map_image(id).image.module.dim() == f.dim());
  LevelMap zero{f, f, MatrixK(5, f.dim(), f.dim())};
  CHECK(map_kernel(zero).module.dim() == f.dim());
  CHECK(map_cokernel(zero).module.dim() == f.dim());

  std::mt19937_64 rng(17);
  Ring r2({5, 2, 2});
  for (int s = 0; s < 200; ++s) {
    const size_t a = 1 + rng() % 2, b = 1 + rng() % 2;
    auto src = LevelModule::free(r2, 1, a), dst = LevelModule::free(r2, 1, b);
    // An A_1-linear map between free modules is a series matrix.
    SeriesMatrix phi(r2, b, a);
    for (size_t i = 0; i < b; ++i)
      for (size_t j = 0; j < a; ++j)
        for (size_t m = 0; m < 3; ++m) phi(i, j).set_coeff(m, rng() % 5);
    LevelMap g{src, dst, phi.level_matrix(1)};
    g.validate();
    auto ker = map_kernel(g);
    auto img = map_image(g);
    auto cok = map_cokernel(g);
    CHECK((g.matrix * ker.inclusion).is_zero());
    CHECK((cok.projection * g.matrix).is_zero());
    CHECK(ker.module.dim() + img.image.module.dim() == src.dim());
    CHECK(cok.module.dim() + img.image.module.dim() == dst.dim());
    CHECK(src.is_linear_map_from(ker.module, ker.inclusion));
    ker.module.validate();
    cok.module.validate();
  }
}

TEST_CASE("tensor products") {
  Ring r({5, 1, 2});
  auto x = TruncatedSeries::variable(r, 0);
  auto m = cyclic(r, 2, x);
  auto n = cyclic(r, 2, x * x);
  CHECK(tensor_level(m, n).module.dim() == 1);
  auto a = LevelModule::free(r, 2, 1);
  CHECK(is_isomorphic(tensor_level(a, n).module, n));
  auto a0 = LevelModule::residue_field(r, 2);
  CHECK(tensor_level(a0, a).module.dim() == 1);

  // functoriality on endomorphisms given by ring elements
  auto f = (x + TruncatedSeries::constant(r, 2)).action(2);
  auto g = (x * x + TruncatedSeries::constant(r, 3)).action(2);
  auto f2 = x.action(2);
  auto g2 = TruncatedSeries::constant(r, 4).action(2);
  auto t = tensor_level(a, a);
  CHECK(tensor_maps(f * f2, g * g2, t, t) == tensor_maps(f, g, t, t) * tensor_maps(f2, g2, t, t));
}

TEST_CASE("hom modules") {
  Ring r({5, 1, 1});
  auto x = TruncatedSeries::variable(r, 0);
  auto m = cyclic(r, 1, x);
  auto n = LevelModule::free(r, 1, 1);
  auto h = hom_level(m, n);
  CHECK(h.module.dim() == 1);
  for (const auto& f : h.basis) CHECK(n.is_linear_map_from(m, f));
  Ring r2({5, 2, 3});
  std::mt19937_64 rng(4);
  auto q = random_module(rng, r2, 3);
  CHECK(is_isomorphic(hom_level(LevelModule::free(r2, 3, 1), q).module, q));
  CHECK(hom_level(q, LevelModule::zero(r2, 3)).module.dim() == 0);
}

TEST_CASE("base change") {
  Ring r({5, 2, 4});
  auto f = LevelModule::free(r, 3, 2);
  auto bc = base_change(f, 2);
  CHECK(bc.module == LevelModule::free(r, 2, 2));
  auto a0 = LevelModule::residue_field(r, 3);
  CHECK(base_change(a0, 2).module.dim() == 1);
  auto a4 = LevelModule::free(r, 4, 1);
  // dims drop by the number of degree-4 monomials in two variables
  CHECK(a4.dim() - base_change(a4, 3).module.dim() == 5);

  std::mt19937_64 rng(8);
  for (int s = 0; s < 20; ++s) {
    auto m = random_module(rng, r, 4);
    auto one = base_change(base_change(m, 3).module, 2);
    auto two = base_change(m, 2);
    CHECK(is_isomorphic(one.module, two.module));
    CHECK(one.module.dim() == two.module.dim());
    // right exactness: a surjection A_4 -> m stays surjective
    CHECK(rank(two.projection) == two.module.dim());
  }
}

TEST_CASE("isomorphism search") {
  Ring r({5, 1, 3});
  auto x = TruncatedSeries::variable(r, 0);
  auto m1 = cyclic(r, 3, x * x);
  auto m2 = cyclic(r, 3, x * x * TruncatedSeries::constant(r, 3) + x * x * x);
  auto m3 = direct_sum({cyclic(r, 3, x), cyclic(r, 3, x)});
  CHECK(is_isomorphic(m1, m2));
  CHECK_FALSE(is_isomorphic(m1, m3));
  auto d = dual(m1);
  d.validate();
  CHECK(is_isomorphic(d, m1));
}
