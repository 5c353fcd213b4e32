#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adic/complex.hpp"
#include "adic/tower.hpp"

namespace adic {

/// Bounded complex of finitely presented modules over the series ring.
/// diffs[i] maps generators of terms[i] to generators of terms[i+1] and must
/// carry relations into relations.
struct FgComplex {
  Ring ring;
  int lo = 0;
  std::vector<FgPresentation> terms;
  std::vector<SeriesMatrix> diffs;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_range(int deg) const { return deg >= lo && deg <= hi(); }
  FgPresentation term(int deg) const;
  SeriesMatrix diff(int deg) const;
  bool all_free() const;
  /// Checks well-definedness and d o d = 0 at precision N, naming the degree.
  void validate() const;

  /// Terms reduced mod m^{k+1}; quotients[deg - lo] gives the projections.
  LevelComplex level(int k) const;
  std::vector<Quotient> level_quotients(int k) const;
};

FgComplex make_fg_complex(const Ring& ring, int lo, std::vector<FgPresentation> terms,
                          std::vector<SeriesMatrix> diffs);
FgComplex single_presentation(const FgPresentation& m, int degree);
FgComplex direct_sum(const FgComplex& a, const FgComplex& b);
/// Total complex with d = d (x) 1 + (-1)^p 1 (x) d; generators e_a (x) f_b.
FgComplex tensor(const FgComplex& a, const FgComplex& b);
FgComplex shift(const FgComplex& c, int s);
/// The level-k complex of a free complex as a complex over A_k with free terms.
LevelComplex level_of(const FgComplex& c, int k);

/// Chain map given on generators.
struct FgChainMap {
  FgComplex source;
  FgComplex target;
  std::map<int, SeriesMatrix> maps;

  SeriesMatrix at(int deg) const;
  void validate() const;
  ChainMap level(int k) const;
};

/// pi(ker d^i at level kernel_level) / im d^{i-1} at level j, with j < kernel_level.
/// When the kernel level is large relative to j this is the image of the true H^i in level j.
struct StableCohomology {
  int degree = 0;
  int level = 0;
  int kernel_level = 0;
  bool stable = false;  // same dimension with kernel_level - 1
  LevelComplex complex;  // the level-j complex
  Subquotient h;
};
StableCohomology stable_cohomology(const FgComplex& c, int i, int j, int kernel_level);
/// j and kernel level N, stamped against kernel level N-1 when j < N-1.
StableCohomology stable_cohomology(const FgComplex& c, int i, int j);

/// Cohomology known to have finite length. The image of H^i in level j grows
/// with j until it is all of H^i. Read at the highest level j <= N-2 where kernel
/// levels N and N-1 agree; determined when the dimension at j equals that at j-1.
struct TorsionCohomology {
  bool determined = false;
  StableCohomology value;
  std::vector<size_t> dims_by_level;
};
TorsionCohomology torsion_cohomology(const FgComplex& c, int i);
/// Same, at a forced level.
TorsionCohomology torsion_cohomology_at(const FgComplex& c, int i, int j);

/// Profile from stable cohomology at level max(0, N-2).
struct FgProfile {
  CohomologyProfile profile;
  int level = 0;
  bool stable = true;
  std::map<int, bool> stable_by_degree;
};
FgProfile fg_profile(const FgComplex& c);

/// H(f) on stable cohomology computed at the same level.
MatrixK induced_map(const FgChainMap& f, const StableCohomology& from, const StableCohomology& to);

}  // namespace adic
