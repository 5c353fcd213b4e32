#pragma once

#include <string>
#include <vector>

#include "adic/koszul.hpp"
#include "adic/projective.hpp"

namespace adic {

/// A bounded complex of towers given level by level; diffs[d - lo][k] acts on level k.
struct TowerComplex {
  enum class TermKind { AdicallyFree, Tower };

  Ring ring;
  int lo = 0;
  std::vector<TowerModule> terms;
  std::vector<TermKind> kinds;
  std::vector<std::vector<MatrixK>> diffs;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  int top_level() const;
  LevelComplex level(int k) const;
  /// d o d = 0 and compatibility with transitions at every level.
  void validate() const;
};
/// Termwise completion of a complex of finite free modules.
TowerComplex tower_complex(const FgComplex& c);
/// Terms F_dec(window_i) with level differentials from series matrices.
TowerComplex decaying_free_complex(const Ring& ring, int lo, const std::vector<DecayingFreeModule>& terms,
                                   const std::vector<SeriesMatrix>& diffs);

enum class CompletenessVerdict { AdicallyFreeTerms, AdicallyProjectiveTerms, CompleteCohomology, FgCohomology, Unknown };
std::string to_string(CompletenessVerdict v);

struct CompletenessCertificate {
  CompletenessVerdict verdict = CompletenessVerdict::Unknown;
  std::vector<std::string> evidence;
};
CompletenessCertificate completeness_certificate(const TowerComplex& c);
CompletenessCertificate completeness_certificate(const FgComplex& c);
/// A bare level complex has no tower structure to certify.
CompletenessCertificate completeness_certificate(const LevelComplex& c);

/// Free complex Q with H(Q) = H(M) and its termwise completion P.
/// Supported inputs: free terms, or zero differentials (then Q is the sum of
/// shifted resolutions of the terms).
struct FreeReplacement {
  FgComplex q;
  TowerComplex p;
  FgChainMap to_input;  // Q -> M
  bool quasi_iso = false;
  std::string diagnostic;
};
FreeReplacement free_to_complete(const FgComplex& m);

/// Generators of H^{i0}(P) for P with free terms and sup = i0, read off from
/// L_0 = H^{i0}(A_0 (x) P) and checked to generate at every level.
struct NakayamaGenerators {
  int degree = 0;
  size_t l0_dim = 0;
  MatrixK generators;  // top-level vectors in P^{i0}
  std::vector<bool> generates_at_level;
  bool verified = false;
};
NakayamaGenerators nakayama_generators(const TowerComplex& p, int i0);

/// H^i(M) (x) H^j(N) -> H^{i+j}(M (x) N) for i >= sup H(M), j >= sup H(N).
struct KunnethWitness {
  int i = 0, j = 0;
  Subquotient left, right;
  TensorProduct product;
  Subquotient total;
  MatrixK iso;  // product.module -> total.module
  bool well_defined = false, linear = false, bijective = false;
  bool ok() const { return well_defined && linear && bijective; }
};
KunnethWitness kunneth_top(const LevelComplex& m, const LevelComplex& n, int i, int j);

/// sup H(M) = s and the nonzero witness for H^s(A_0 (x)^L M).
struct ConservativityEvidence {
  int sup = 0;
  size_t tor_dim = 0;       // H^s(A_0 (x)^L M)
  size_t kunneth_dim = 0;   // A_0 (x) H^s(M)
  MatrixK witness;
  bool determined = false;
  bool nonzero() const { return tor_dim > 0 && witness.cols() > 0 && !witness.is_zero(); }
  bool agree() const { return tor_dim == kunneth_dim; }
};
ConservativityEvidence conservativity_probe(const FgComplex& m);

/// d(delta_i) = delta_i - t delta_{i+1} from a window of w indices to w + 1, n = 1.
struct NonCompleteCandidate {
  TowerComplex complex;
  std::vector<bool> injective_by_level;
  CompletenessCertificate certificate;
  std::vector<size_t> h0_dims;
  bool h0_tower_invariant = false;
  std::string report;
};
NonCompleteCandidate non_complete_h0_candidate(const Ring& ring, size_t window, int max_level);

}  // namespace adic
