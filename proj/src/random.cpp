#include "adic/random.hpp"

#include <algorithm>

#include "adic/error.hpp"

namespace adic {

uint64_t case_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TruncatedSeries random_series(Rng& rng, const Ring& ring, int min_degree, int max_degree, int density) {
  TruncatedSeries f(ring);
  max_degree = std::min(max_degree, ring.precision());
  for (size_t i = 0; i < ring.basis_size(); ++i) {
    const int d = ring.degree(i);
    if (d < min_degree || d > max_degree) continue;
    if (rng.chance(1, density)) f.set_coeff(i, rng.field(ring.p()));
  }
  return f;
}

SeriesMatrix random_series_matrix(Rng& rng, const Ring& ring, size_t rows, size_t cols, int min_degree,
                                  int max_degree, int density) {
  SeriesMatrix m(ring, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m(i, j) = random_series(rng, ring, min_degree, max_degree, density);
  return m;
}

SeriesMatrix random_invertible(Rng& rng, const Ring& ring, size_t n, int max_degree) {
  while (true) {
    SeriesMatrix m = random_series_matrix(rng, ring, n, n, 0, max_degree, 2);
    if (rank(m.constant_part()) == n) return m;
  }
}

SeriesMatrix random_idempotent(Rng& rng, const Ring& ring, size_t size, size_t rank, int max_degree) {
  SeriesMatrix u = random_invertible(rng, ring, size, max_degree);
  SeriesMatrix d(ring, size, size);
  for (size_t i = 0; i < rank && i < size; ++i) d(i, i) = TruncatedSeries::constant(ring, 1);
  return u * d * series_inverse(u);
}

FgPresentation random_presentation(Rng& rng, const Ring& ring, size_t max_rank, size_t max_relations,
                                   int max_degree) {
  const size_t rank = 1 + rng.below(max_rank);
  const size_t rels = rng.below(max_relations + 1);
  // Mostly relations inside m; occasionally a unit entry to exercise cancellation.
  SeriesMatrix m = random_series_matrix(rng, ring, rank, rels, rng.chance(1, 4) ? 0 : 1, max_degree, 2);
  return FgPresentation(std::move(m), rank);
}

LevelModule random_level_module(Rng& rng, const Ring& ring, int level, size_t max_dim) {
  require(max_dim >= 1, ErrorKind::InvalidInput, "random_level_module: max_dim must be positive");
  std::vector<LevelModule> parts;
  size_t dim = 0;
  const int pieces = rng.between(1, 2);
  for (int piece = 0; piece < pieces; ++piece) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      SeriesMatrix rel(ring, 1, rng.between(1, 2));
      for (size_t j = 0; j < rel.cols(); ++j) rel(0, j) = random_series(rng, ring, 1, std::max(1, level), 2);
      LevelModule m = module_from_level_presentation(ring, level, rel, 1).module;
      if (m.dim() >= 1 && dim + m.dim() <= max_dim) {
        dim += m.dim();
        parts.push_back(std::move(m));
        break;
      }
    }
  }
  if (parts.empty()) parts.push_back(LevelModule::residue_field(ring, level));
  return direct_sum(parts);
}

MatrixK random_hom(Rng& rng, const LevelModule& m, const LevelModule& n) {
  HomModule h = hom_level(m, n);
  MatrixK c(m.p(), h.basis.size(), 1);
  for (size_t i = 0; i < h.basis.size(); ++i) c(i, 0) = rng.field(m.p());
  if (h.basis.empty()) return MatrixK(m.p(), n.dim(), m.dim());
  return h.to_matrix(c);
}

MatrixK random_hom_killing(Rng& rng, const LevelModule& m, const MatrixK& kill, const LevelModule& n) {
  Quotient q = quotient(m, kill.cols() ? generated_submodule(m, kill) : kill);
  return random_hom(rng, q.module, n) * q.projection;
}

namespace {

LevelComplex chain_from_terms(Rng& rng, const Ring& ring, int level, int lo, std::vector<LevelModule> terms) {
  std::vector<MatrixK> diffs;
  for (size_t i = 0; i + 1 < terms.size(); ++i) {
    if (i == 0)
      diffs.push_back(random_hom(rng, terms[0], terms[1]));
    else
      diffs.push_back(random_hom_killing(rng, terms[i], diffs.back(), terms[i + 1]));
  }
  return make_complex(ring, level, lo, std::move(terms), std::move(diffs));
}

}  // namespace

LevelComplex random_level_complex(Rng& rng, const Ring& ring, int level, int lo, int num_terms,
                                  size_t max_dim) {
  std::vector<LevelModule> terms;
  for (int i = 0; i < num_terms; ++i) terms.push_back(random_level_module(rng, ring, level, max_dim));
  return chain_from_terms(rng, ring, level, lo, std::move(terms));
}

LevelComplex random_free_level_complex(Rng& rng, const Ring& ring, int level, int lo, int num_terms,
                                       size_t max_rank) {
  std::vector<LevelModule> terms;
  for (int i = 0; i < num_terms; ++i)
    terms.push_back(LevelModule::free(ring, level, 1 + rng.below(max_rank)));
  return chain_from_terms(rng, ring, level, lo, std::move(terms));
}

namespace {

FgComplex random_free_map(Rng& rng, const Ring& ring, int lo, int max_degree) {
  const size_t r = 1 + rng.below(2), t = 1 + rng.below(2);
  FgComplex c{ring, lo, {FgPresentation::free(ring, r), FgPresentation::free(ring, t)},
              {random_series_matrix(rng, ring, t, r, rng.chance(1, 3) ? 0 : 1, max_degree)}};
  return c;
}

}  // namespace

FgComplex random_fg_complex(Rng& rng, const Ring& ring, int max_degree) {
  FgComplex c{ring, 0, {}, {}};
  switch (rng.below(4)) {
    case 0:
      c = single_presentation(random_presentation(rng, ring, 2, 2, max_degree), rng.between(-2, 0));
      break;
    case 1:
      c = random_free_map(rng, ring, rng.between(-2, -1), max_degree);
      break;
    case 2: {
      const TruncatedSeries b = random_series(rng, ring, 1, max_degree);
      const TruncatedSeries cc = random_series(rng, ring, 0, max_degree);
      SeriesMatrix f(ring, 1, 1);
      f(0, 0) = random_series(rng, ring, 0, max_degree);
      c = FgComplex{ring, -1, {FgPresentation::cyclic(ring, {b * cc}), FgPresentation::cyclic(ring, {b})}, {f}};
      break;
    }
    default:
      c = tensor(random_free_map(rng, ring, -1, max_degree), random_free_map(rng, ring, 0, max_degree));
      break;
  }
  if (rng.chance(1, 3))
    c = direct_sum(c, single_presentation(random_presentation(rng, ring, 1, 1, max_degree), rng.between(-3, 0)));
  c.validate();
  return c;
}

}  // namespace adic
