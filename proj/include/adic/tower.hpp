#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adic/level_module.hpp"

namespace adic {

/// coker(A^s -> A^r) with the relation matrix known to precision N.
struct FgPresentation {
  SeriesMatrix relations;  // rank x s
  size_t rank = 0;

  FgPresentation(SeriesMatrix rel, size_t r);
  static FgPresentation free(const Ring& ring, size_t rank);
  /// A / (f_1, ..., f_s)
  static FgPresentation cyclic(const Ring& ring, const std::vector<TruncatedSeries>& rels);
  /// A_0 = A / m
  static FgPresentation residue_field(const Ring& ring);

  const Ring& ring() const { return relations.ring(); }
  size_t num_relations() const { return relations.cols(); }
  bool is_free() const { return relations.is_zero(); }
  /// coker at level k with its projection from A_k^r.
  Quotient level(int k) const;
};

FgPresentation direct_sum(const FgPresentation& a, const FgPresentation& b);
/// Tensor of presentations: generators e_a (x) f_b in index a * rank(b) + b.
FgPresentation tensor(const FgPresentation& a, const FgPresentation& b);

/// Inverse system M_0 <- M_1 <- ... <- M_top with surjective transitions
/// inducing M_{k+1} / m^{k+1} M_{k+1} = M_k.
struct TowerModule {
  Ring ring;
  std::vector<LevelModule> levels;
  std::vector<MatrixK> transitions;  // transitions[k] : M_{k+1} -> M_k

  int top() const { return static_cast<int>(levels.size()) - 1; }
  /// Composite M_from -> M_to for to <= from.
  MatrixK transition(int from, int to) const;
  /// Throws with the offending level when an invariant fails.
  void validate() const;
  bool is_zero() const;
};

/// Level-wise inverse system with A-linear transitions that need not be
/// surjective (e.g. Hom into a tower).
struct InverseSystem {
  std::vector<LevelModule> levels;
  std::vector<MatrixK> transitions;
};

struct TowerMorphism {
  TowerModule source;
  TowerModule target;
  std::vector<MatrixK> maps;

  void validate() const;
};

/// complete_fg output: the tower together with A_k^r -> M_k for each level.
struct CompletedModule {
  FgPresentation presentation;
  TowerModule tower;
  std::vector<Quotient> quotients;  // quotients[k].projection : A_k^r -> M_k
};

CompletedModule complete_fg(const FgPresentation& m);

/// F_dec(Z, A): finite Z, or countable Z with a materialization window.
struct DecayingFreeModule {
  Ring ring;
  size_t size = 0;  // |Z| when finite, the window when countable
  bool countable = false;

  static DecayingFreeModule finite(const Ring& ring, size_t size);
  static DecayingFreeModule windowed(const Ring& ring, size_t window);
  size_t materialized() const { return size; }
  DecayingFreeModule with_window(size_t window) const;
  LevelModule level(int k) const;
  TowerModule tower() const;
};

/// phi(delta_z) = f(z). Elements of the target are given by top-level vectors.
TowerMorphism universal_map(const DecayingFreeModule& f, const TowerModule& target,
                            const std::vector<MatrixK>& assignment);

/// Finitely many stages T_0 -> T_1 -> ... with T_t killed by m^{t+1}.
struct IndTorsionModule {
  Ring ring;
  std::vector<LevelModule> stages;
  std::vector<MatrixK> transitions;  // transitions[t] : T_t -> T_{t+1}

  int budget() const { return static_cast<int>(stages.size()) - 1; }
  void validate() const;
};

/// Socle-type filtration T_t = ker(m^{t+1}) of a finite length module, t <= budget.
IndTorsionModule ind_from_torsion_module(const LevelModule& m, int budget);

struct GammaResult {
  bool determined = false;
  int stable_t = 0;           // ker m^t = ker m^{t+1} first holds here
  int ambient_level = 0;      // level where the kernel chain was compared
  bool precision_stable = false;  // same answer with one level less precision
  LevelModule module;         // Gamma(M) as a module at its own nilpotency level
  IndTorsionModule chain;     // stages ker m^{s+1}
  std::vector<size_t> chain_dims;
  std::string report;
};
GammaResult gamma_torsion(const CompletedModule& m);

struct TauCheck {
  int level = 0;
  bool bijective = false;
  size_t source_dim = 0, target_dim = 0;
  MatrixK witness;  // coker level k -> A_k (x) completion
};
/// A_k (x) M -> A_k (x) completion(M) for the given k.
TauCheck check_tau_bijective(const FgPresentation& m, int k);

struct HomIntoComplete {
  InverseSystem hom;     // Hom_A(M, N_k) as tuples in N_k^r
  std::vector<bool> agrees_with_completion;  // per level
  bool agrees() const;
};
HomIntoComplete hom_into_complete(const FgPresentation& m, const TowerModule& target);

struct FreeCompletionCheck {
  std::vector<bool> level_equal;
  bool all_equal() const;
};
FreeCompletionCheck completion_of_free(const Ring& ring, size_t z);

}  // namespace adic
