#pragma once

#include <cstdint>
#include <random>

#include "adic/complex.hpp"
#include "adic/fg_complex.hpp"
#include "adic/tower.hpp"

namespace adic {

/// Per-case seed derived from (suite seed, case index) with splitmix64.
uint64_t case_seed(uint64_t seed, uint64_t index);

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  uint64_t below(uint64_t m) { return m ? gen_() % m : 0; }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }
  bool chance(int num, int den) { return below(static_cast<uint64_t>(den)) < static_cast<uint64_t>(num); }
  uint32_t field(uint32_t p) { return static_cast<uint32_t>(below(p)); }

 private:
  std::mt19937_64 gen_;
};

/// Random series supported in degrees [min_degree, max_degree]; each monomial
/// is present with probability 1/density.
TruncatedSeries random_series(Rng& rng, const Ring& ring, int min_degree, int max_degree,
                              int density = 2);
SeriesMatrix random_series_matrix(Rng& rng, const Ring& ring, size_t rows, size_t cols,
                                  int min_degree, int max_degree, int density = 2);
/// Square matrix invertible modulo m.
SeriesMatrix random_invertible(Rng& rng, const Ring& ring, size_t n, int max_degree);

FgPresentation random_presentation(Rng& rng, const Ring& ring, size_t max_rank, size_t max_relations,
                                   int max_degree);
/// U diag(1..1, 0..0) U^{-1} with `rank` ones and U invertible.
SeriesMatrix random_idempotent(Rng& rng, const Ring& ring, size_t size, size_t rank, int max_degree);
/// Cyclic-sum module at the given level with dim <= max_dim.
LevelModule random_level_module(Rng& rng, const Ring& ring, int level, size_t max_dim);
/// Uniform random element of Hom_{A_k}(m, n).
MatrixK random_hom(Rng& rng, const LevelModule& m, const LevelModule& n);
/// Random A_k-linear map vanishing on the columns of `kill`.
MatrixK random_hom_killing(Rng& rng, const LevelModule& m, const MatrixK& kill, const LevelModule& n);
/// Random complex with the given number of terms in degrees lo..; d o d = 0 by construction.
LevelComplex random_level_complex(Rng& rng, const Ring& ring, int level, int lo, int num_terms,
                                  size_t max_dim);
/// Free A_k terms of rank <= max_rank with random differentials, d o d = 0 by construction.
LevelComplex random_free_level_complex(Rng& rng, const Ring& ring, int level, int lo, int num_terms,
                                       size_t max_rank);

/// Bounded complex of presentations in degrees >= -3: a single module, a free
/// map, a multiplication A/(bc) -> A/(b), or a tensor of two free maps,
/// sometimes plus a shifted module. May be acyclic.
FgComplex random_fg_complex(Rng& rng, const Ring& ring, int max_degree);

}  // namespace adic
