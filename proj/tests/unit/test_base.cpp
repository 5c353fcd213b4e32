#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "adic/error.hpp"
#include "adic/matrix.hpp"
#include "adic/ring.hpp"
#include "adic/series.hpp"

using namespace adic;

namespace {

// Leibniz-formula determinant, deliberately unrelated to row reduction.
uint32_t leibniz_det(const std::vector<std::vector<uint32_t>>& m, uint32_t p) {
  const size_t n = m.size();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  uint64_t total = 0;
  do {
    size_t inversions = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    uint64_t term = 1;
    for (size_t i = 0; i < n; ++i) term = term * m[i][perm[i]] % p;
    total = (total + (inversions % 2 ? p - term : term)) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<uint32_t>(total);
}

// Largest k with a nonzero k x k minor.
size_t minor_rank(const MatrixK& a) {
  const size_t r = a.rows(), c = a.cols();
  for (size_t k = std::min(r, c); k > 0; --k) {
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        std::vector<std::vector<uint32_t>> sub;
        for (size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          sub.emplace_back();
          for (size_t j = 0; j < c; ++j)
            if (cs[j]) sub.back().push_back(a(i, j));
        }
        if (leibniz_det(sub, a.prime()) != 0) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

MatrixK random_matrix(std::mt19937_64& rng, uint32_t p, size_t r, size_t c, int zero_bias = 0) {
  MatrixK m(p, r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      m(i, j) = (zero_bias && rng() % zero_bias) ? 0 : static_cast<uint32_t>(rng() % p);
  return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK(fp_inv(3, 7) == 5);
  CHECK(fp_reduce(-1, 5) == 4);
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  for (uint32_t a = 1; a < 101; ++a) CHECK(fp_mul(a, fp_inv(a, 101), 101) == 1);
}

TEST_CASE("level ring bases") {
  Ring r({5, 2, 3});
  CHECK(make_level_ring(r, 3).basis.size() == 10);
  Ring r2({2, 1, 0});
  auto lr = make_level_ring(r2, 0);
  CHECK(lr.basis.size() == 1);
  CHECK(lr.basis[0] == Monomial{0});
  Ring r3({7, 3, 1});
  auto b3 = make_level_ring(r3, 1).basis;
  REQUIRE(b3.size() == 4);
  CHECK(b3[1] == Monomial{1, 0, 0});
  CHECK(b3[3] == Monomial{0, 0, 1});
  CHECK_THROWS_AS(make_level_ring(r, 4), Error);
  try {
    make_level_ring(r, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionExceeded);
  }
  CHECK_THROWS_AS(Ring({4, 1, 1}), Error);
}

TEST_CASE("adic order") {
  Ring r({5, 2, 5});
  auto x1 = TruncatedSeries::variable(r, 0), x2 = TruncatedSeries::variable(r, 1);
  CHECK(TruncatedSeries::zero(r).ord() == AdicOrder{6, true});
  CHECK((x1 + x2 * x2).ord() == AdicOrder{1, false});
  CHECK(TruncatedSeries::monomial(r, {2, 1}, 3).ord() == AdicOrder{3, false});

  std::mt19937_64 rng(11);
  for (int s = 0; s < 50; ++s) {
    TruncatedSeries f(r), g(r);
    for (size_t i = 0; i < r.basis_size(); ++i) {
      if (rng() % 3 == 0 && r.degree(i) >= 1) f.set_coeff(i, rng() % 5);
      if (rng() % 3 == 0 && r.degree(i) >= 1) g.set_coeff(i, rng() % 5);
    }
    if (f.is_zero() || g.is_zero()) continue;
    const int of = f.ord().value, og = g.ord().value;
    if (of + og <= r.precision()) CHECK((f * g).ord().value == of + og);
    if (of != og) CHECK((f + g).ord().value == std::min(of, og));
    else CHECK((f + g).ord().value >= of);
  }
}

TEST_CASE("series arithmetic against schoolbook convolution") {
  Ring r({7, 1, 6});
  auto x = TruncatedSeries::variable(r, 0);
  auto one = TruncatedSeries::constant(r, 1);
  CHECK((x * one) == x);
  CHECK((x * power(x, 6)).is_zero());
  auto prod = (one + x) * (one - x);
  CHECK(prod == one - x * x);

  std::mt19937_64 rng(3);
  for (int s = 0; s < 30; ++s) {
    std::vector<uint64_t> a(7), b(7);
    TruncatedSeries f(r), g(r);
    for (int i = 0; i <= 6; ++i) {
      a[i] = rng() % 7;
      b[i] = rng() % 7;
      f.set_coeff(i, a[i]);
      g.set_coeff(i, b[i]);
    }
    auto h = f * g;
    for (int d = 0; d <= 6; ++d) {
      uint64_t c = 0;
      for (int i = 0; i <= d; ++i) c += a[i] * b[d - i];
      CHECK(h.coeff(d) == c % 7);
    }
  }
}

TEST_CASE("ring multiplication is associative and commutative") {
  Ring r({5, 2, 4});
  std::mt19937_64 rng(5);
  auto rand_series = [&] {
    TruncatedSeries f(r);
    for (size_t i = 0; i < r.basis_size(); ++i) f.set_coeff(i, rng() % 5);
    return f;
  };
  for (int s = 0; s < 20; ++s) {
    auto f = rand_series(), g = rand_series(), h = rand_series();
    CHECK((f * g) == (g * f));
    CHECK(((f * g) * h) == (f * (g * h)));
  }
  auto u = TruncatedSeries::constant(r, 2) + TruncatedSeries::variable(r, 1);
  CHECK((u * unit_inverse(u)) == TruncatedSeries::constant(r, 1));
}

TEST_CASE("level action matrices are multiplication") {
  Ring r({5, 2, 3});
  auto f = TruncatedSeries::variable(r, 0) + TruncatedSeries::constant(r, 2);
  auto g = TruncatedSeries::variable(r, 1) * TruncatedSeries::variable(r, 1);
  CHECK((f.action(3) * g.action(3)) == (f * g).action(3));
}

TEST_CASE("rref basics") {
  auto id = MatrixK::identity(5, 4);
  CHECK(rank(id) == 4);
  CHECK(kernel(id).cols() == 0);
  MatrixK z(5, 3, 5);
  CHECK(rank(z) == 0);
  CHECK(kernel(z).cols() == 5);
}

TEST_CASE("rank agrees with minor oracle") {
  std::mt19937_64 rng(2024);
  for (int s = 0; s < 100; ++s) {
    MatrixK m = random_matrix(rng, 5, 6, 6, s % 3 == 0 ? 0 : 2);
    // force some rank deficiency on part of the samples
    if (s % 4 == 1) m.set_block(0, 5, m.block(0, 0, 6, 1));
    const size_t rk = rank(m);
    CHECK(rk == minor_rank(m));
    CHECK(rk == rank(transpose(m)));
    auto rr = rref(m);
    CHECK(rref(rr.reduced).reduced == rr.reduced);
    MatrixK ker = kernel(m);
    CHECK(ker.cols() == 6 - rk);
    CHECK((m * ker).is_zero());
  }
}

TEST_CASE("solve and inverse") {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 50; ++s) {
    MatrixK a = random_matrix(rng, 101, 5, 7);
    MatrixK x = random_matrix(rng, 101, 7, 2);
    auto sol = solve(a, a * x);
    REQUIRE(sol.has_value());
    CHECK((a * *sol) == a * x);
    MatrixK sq = random_matrix(rng, 101, 4, 4);
    auto inv = inverse(sq);
    if (rank(sq) == 4) {
      REQUIRE(inv.has_value());
      CHECK((sq * *inv).is_identity());
    } else {
      CHECK_FALSE(inv.has_value());
    }
  }
}

TEST_CASE("series matrix inverse") {
  Ring r({5, 2, 3});
  SeriesMatrix a(r, 2, 2);
  a(0, 0) = TruncatedSeries::constant(r, 1) + TruncatedSeries::variable(r, 0);
  a(0, 1) = TruncatedSeries::variable(r, 1);
  a(1, 1) = TruncatedSeries::constant(r, 3);
  a(1, 0) = TruncatedSeries::variable(r, 0) * TruncatedSeries::variable(r, 1);
  CHECK((a * series_inverse(a)) == SeriesMatrix::identity(r, 2));
}
