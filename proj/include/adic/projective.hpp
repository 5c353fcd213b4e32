#pragma once

#include <string>
#include <vector>

#include "adic/tower.hpp"

namespace adic {

/// dim M / mM.
size_t minimal_generator_count(const LevelModule& m);
/// Basis vectors of M chosen in order whose images span M / mM.
MatrixK minimal_generators(const LevelModule& m);
/// Free over A_k iff generators * dim A_k = dim M and A_k^r -> M is injective.
bool is_free_level(const LevelModule& m);
/// The map A_k^r -> M sending e_i to the i-th column of gens.
MatrixK free_map(const LevelModule& m, const MatrixK& gens);

struct ProjectivityVerdict {
  std::vector<bool> by_level;
  std::vector<size_t> generator_counts;
  bool overall = true;
};
ProjectivityVerdict is_formally_projective(const TowerModule& m);

/// alpha_k : F_k -> P_k with splittings beta_k : P_k -> F_k.
struct SplittingTower {
  TowerModule free;
  TowerModule target;
  std::vector<MatrixK> alpha;
  std::vector<MatrixK> beta;
  bool verified = false;
  std::string diagnostic;
};
/// Builds beta_0 from projectivity of P_0, then for each k picks a splitting beta'
/// at level k+1, corrects it by a lift of chi = beta_k theta^P - theta^F beta' into
/// ker alpha_{k+1}, and sets beta_{k+1} = beta' + lift.
SplittingTower lift_splittings(const DecayingFreeModule& f, const TowerModule& p, const std::vector<MatrixK>& alpha);
/// alpha o beta = id and the compatibility squares, checked exactly.
bool check_splittings(const SplittingTower& s, std::string* diagnostic);

/// e_k = beta_k alpha_k on a free tower with image isomorphic to P.
struct SummandCertificate {
  SplittingTower splitting;
  std::vector<MatrixK> idempotents;
  bool idempotent = false;
  bool image_isomorphic = false;
  bool ok() const { return splitting.verified && idempotent && image_isomorphic; }
};
SummandCertificate summand_certificate(const TowerModule& p);

/// Image of an idempotent series matrix e on the free module of rank z, as a tower,
/// with the corestriction alpha_k : A_k^z -> im e_k.
struct IdempotentImage {
  DecayingFreeModule free;
  SeriesMatrix e;
  TowerModule image;
  std::vector<MatrixK> alpha;
};
IdempotentImage idempotent_image(const SeriesMatrix& e);

}  // namespace adic
