#pragma once

#include <map>
#include <string>
#include <vector>

#include "adic/fg_complex.hpp"

namespace adic {

/// Subsets of {0..n-1} of size j in lex order; the basis of the wedge power.
std::vector<std::vector<int>> wedge_basis(int n, int j);

/// K(A; a) in degrees -n..0 with d(e_I) = sum_s (-1)^s a_{I_s} e_{I - I_s}.
struct KoszulComplex {
  std::vector<TruncatedSeries> sequence;
  FgComplex complex;

  int length() const { return static_cast<int>(sequence.size()); }
};
KoszulComplex koszul(const std::vector<TruncatedSeries>& a);
/// The sequence x_1^t, ..., x_n^t.
KoszulComplex koszul_powers(const Ring& ring, int t);

/// Hom(K, A) in degrees 0..n on the dual basis e_I^*; d is the transpose of d_K.
/// `iso` maps K^dual to K[-n] by e_I^* -> eps(I) e_{I^c}.
struct KoszulDual {
  FgComplex dual;
  FgComplex shifted;
  FgChainMap iso;
  bool verified = false;
  std::string diagnostic;
};
KoszulDual koszul_dual(const KoszulComplex& k);
/// Sign in the duality e_I^* -> eps(I) e_{I^c}.
int koszul_duality_sign(int n, const std::vector<int>& subset);

/// K (x) M: computes A_0 (x)^L M since the variables form a regular sequence.
FgComplex derived_tensor_A0(const FgComplex& m);
/// K^dual (x) M = Hom(K, M): computes RHom(A_0, M).
FgComplex rhom_A0(const FgComplex& m);
/// Ext^j(A_0, M) at the level where its dimension stabilizes.
TorsionCohomology ext_A0(const FgComplex& m, int j);

/// The same constructions for a module over A_k, where they are exact.
/// `pattern` is a matrix of series whose entries act through m.
MatrixK act_blockwise(const SeriesMatrix& pattern, const LevelModule& m);
LevelComplex koszul_on(const LevelModule& m);
LevelComplex koszul_dual_on(const LevelModule& m);
/// Ext^j(A_0, m) and Tor_j(A_0, m) as subquotients of the level complexes.
Subquotient ext_A0_level(const LevelModule& m, int j);
Subquotient tor_A0_level(const LevelModule& m, int j);

/// Directed system of finite length modules with maps stage t -> t+1.
struct DirectedSystem {
  std::vector<LevelModule> stages;
  std::vector<MatrixK> transitions;
  bool determined = true;  // every stage was captured at a plateau level

  /// With r(t, s) the rank of stage t -> stage s and L the last stage, the first t0 with
  /// either rank f_t = rank f_{t+1} = rank(f_{t+1} f_t) for t0 <= t <= L - 2, or
  /// t0 <= L - 3, r(t, L) = r(L - 2, L) for t0 <= t <= L - 2 and r(t, L - 1) = r(t, L)
  /// for t0 <= t <= L - 3. -1 if neither holds.
  int stable_from() const;
  /// r(t0, L) when stable: the colimit dimension. Otherwise the rank of the last transition.
  size_t colimit_dim() const;
  std::vector<size_t> dims() const;
};

/// Stages K^dual(x^t) (x) M for t = 1..budget. The transition t -> t+1 multiplies
/// e_I^* by the product of x_i over i in I. cohomology[i] is the system of H^i.
struct IndComplex {
  std::vector<FgComplex> stages;
  std::vector<FgChainMap> transitions;
  std::map<int, DirectedSystem> cohomology;
  std::map<int, bool> stable;
  std::map<int, int> stable_from;
};
IndComplex telescope_gamma(const FgComplex& m, int budget);
IndComplex telescope_gamma(const FgPresentation& m, int budget);
/// H^i of a directed system of complexes, each stage read at a common level.
DirectedSystem cohomology_system(const std::vector<FgComplex>& stages, const std::vector<FgChainMap>& transitions,
                                 int i);

/// Minimal free resolution ... -> A^{r_1} -> A^{r_0} -> M, in degrees -L..0.
/// `augmentation` is rank(M) x r_0 on generators.
struct Resolution {
  FgPresentation module;
  FgComplex complex;
  SeriesMatrix augmentation;
  bool verified = false;
  std::string diagnostic;

  std::vector<size_t> ranks() const;
};
Resolution resolve_free_fg(const FgPresentation& m, int length);

/// Ext^j(M, target) from the resolution: H^j of Hom(F, target) at a given level.
struct ExtResult {
  int degree = 0;
  int level = 0;
  bool stable = false;
  LevelComplex hom_complex;
  Subquotient ext;
};
ExtResult ext_fg(const FgPresentation& m, const FgPresentation& target, int j);
ExtResult ext_fg(const FgPresentation& m, const FgPresentation& target, int j, int level);

}  // namespace adic
