#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adic/koszul.hpp"

namespace adic {

/// J(m) to the given stage budget: stage t is the dual of A_t, transitions
/// dual to the ring surjections A_{t+1} -> A_t.
IndTorsionModule injective_hull(const Ring& ring, int budget);

/// D(M): stage t is the dual of M / m^{t+1} M with transitions dual to the tower maps.
IndTorsionModule matlis_dual_fg(const FgPresentation& m, int budget);

/// A presentation N with D(N) stage-wise isomorphic to T, valid at levels <= budget.
/// iso[t] : N_t -> dual(T_t) is built from the chosen generators.
struct DualBack {
  FgPresentation presentation;
  TowerModule dual_tower;   // dual(T_t) with the transposed transitions
  MatrixK generators;       // vectors in dual(T_budget)
  std::vector<MatrixK> iso;
  bool verified = false;
  std::string diagnostic;
};
/// Throws InvalidInput when T_t is not the (t+1)-st socle layer of T_{t+1}.
DualBack matlis_dual_back(const IndTorsionModule& t);

/// D(D(M)) against M at every level <= budget.
struct MatlisRoundtrip {
  IndTorsionModule dual;
  DualBack back;
  std::vector<bool> iso_by_level;  // N_t -> M_t is a compatible isomorphism
  bool ok() const;
};
MatlisRoundtrip matlis_roundtrip(const FgPresentation& m, int budget);

/// Truncations of a possibly infinite torsion module, windows[w] growing with w.
/// A single window stands for a module of finite length.
struct TorsionFamily {
  std::string name;
  std::vector<IndTorsionModule> windows;
};
TorsionFamily constant_family(const std::string& name, IndTorsionModule t);
/// Window w is the sum of pieces[0..w] as a torsion module over A_budget.
TorsionFamily growing_sum_family(const std::string& name, const std::vector<LevelModule>& pieces, int budget);
/// Windows of the sum of A / m^i over i >= 1.
TorsionFamily growing_window_family(const Ring& ring, int max_window, int budget);

/// Ext^q(A_0, T_t) with the maps induced by the stage inclusions.
DirectedSystem ext_system(const IndTorsionModule& t, int q);

/// mu_q with its stabilization stamp. `at_least` marks a value that was
/// still growing through the stage or window budget.
struct BassValue {
  int degree = 0;
  size_t value = 0;
  bool at_least = false;
  int stable_from = -1;  // stage where the images stabilize, -1 if never
  bool determined = true;
  int stages = 0;
  std::vector<size_t> stage_dims;
  std::vector<size_t> by_window;
  bool finite() const { return determined && !at_least && stable_from >= 0; }
  std::string stamp() const;
};
struct BassProfile {
  std::vector<BassValue> mu;
  bool all_finite() const;
  std::vector<size_t> values() const;
  std::string to_string() const;
};
BassProfile bass_numbers(const IndTorsionModule& t, int q_max);
BassProfile bass_numbers(const TorsionFamily& f, int q_max);
/// Ext^q(A_0, colim C_t) for q in [q_lo, q_hi], stage by stage through RHom(A_0, C_t).
BassProfile bass_numbers(const IndComplex& m, int q_lo, int q_hi);

enum class CofiniteVerdict { Cofinite, NotCofinite, Undetermined };
std::string to_string(CofiniteVerdict v);

struct CofinitenessReport {
  CofiniteVerdict verdict = CofiniteVerdict::Undetermined;
  int window_lo = 0, window_hi = -1;  // where Ext can be nonzero
  BassProfile ext;
  bool vanishes_outside_window = true;
  std::string report;
  bool cofinite() const { return verdict == CofiniteVerdict::Cofinite; }
};
/// Scans Ext^j(A_0, M) over every degree of RHom(A_0, C_t); the window is
/// [inf H, sup H + n] with H read off the last stage.
CofinitenessReport is_cohomologically_cofinite(const IndComplex& m);
/// M concentrated in one degree.
CofinitenessReport is_cohomologically_cofinite(const TorsionFamily& m, int degree = 0);

/// n = 1: the Ext-finiteness verdict against reconstruction of N with M = D(N).
struct HartshorneComparison {
  CofinitenessReport ext_pipeline;
  bool dual_pipeline = false;
  std::optional<DualBack> n;
  std::vector<size_t> generator_counts;  // minimal generators of the dual, per window
  std::string report;
  bool agree() const { return ext_pipeline.cofinite() == dual_pipeline && ext_pipeline.verdict != CofiniteVerdict::Undetermined; }
};
HartshorneComparison hartshorne_compare_n1(const TorsionFamily& m);

}  // namespace adic
