#pragma once

#include <optional>
#include <vector>

#include "adic/matrix.hpp"
#include "adic/ring.hpp"
#include "adic/series.hpp"

namespace adic {

/// A finite-dimensional module over A_k = A / m^{k+1}: a k-vector space of
/// dimension dim with n commuting nilpotent generator actions. Elements are
/// column vectors.
class LevelModule {
 public:
  LevelModule(Ring ring, int level, size_t dim, std::vector<MatrixK> actions);

  static LevelModule zero(const Ring& ring, int level);
  static LevelModule free(const Ring& ring, int level, size_t rank);
  /// A_0 = k viewed at the given level.
  static LevelModule residue_field(const Ring& ring, int level);

  const Ring& ring() const { return ring_; }
  uint32_t p() const { return ring_.p(); }
  int level() const { return level_; }
  size_t dim() const { return dim_; }
  const std::vector<MatrixK>& actions() const { return actions_; }
  const MatrixK& action(int i) const { return actions_[i]; }

  /// Action of every basis monomial of degree <= level, indexed like the ring basis.
  std::vector<MatrixK> monomial_actions() const;
  MatrixK series_action(const TruncatedSeries& f) const;
  /// Spanning columns of m^e M.
  MatrixK ideal_power_image(int e) const;
  bool killed_by_power(int e) const;
  /// Same module regarded over A_k for another k; requires m^{k+1} M = 0.
  LevelModule relabeled(int level) const;

  /// Throws unless the actions commute and m^{level+1} acts as zero.
  void validate() const;
  bool is_linear_map_from(const LevelModule& src, const MatrixK& f) const;

  bool operator==(const LevelModule& o) const {
    return level_ == o.level_ && dim_ == o.dim_ && actions_ == o.actions_;
  }

 private:
  Ring ring_;
  int level_;
  size_t dim_;
  std::vector<MatrixK> actions_;
};

/// An A_k-linear map; `matrix` is target.dim x source.dim.
struct LevelMap {
  LevelModule source;
  LevelModule target;
  MatrixK matrix;

  void validate() const;
};

struct Submodule {
  LevelModule module;
  MatrixK inclusion;   // ambient coordinates of the basis
  MatrixK retraction;  // left inverse of inclusion
};

struct Quotient {
  LevelModule module;
  MatrixK projection;
  MatrixK section;  // set-theoretic lift, projection * section = I
};

/// U / W for invariant subspaces W <= U <= V.
struct Subquotient {
  LevelModule module;
  MatrixK reps;    // V-coordinates of representatives
  MatrixK reduce;  // H-coordinates of any v in U
};

/// The A_k-submodule generated by the columns of gens.
MatrixK generated_submodule(const LevelModule& v, const MatrixK& gens);
Submodule submodule(const LevelModule& v, const MatrixK& spanning);
Quotient quotient(const LevelModule& v, const MatrixK& spanning);
Subquotient subquotient(const LevelModule& v, const MatrixK& upper, const MatrixK& lower);

LevelModule direct_sum(const std::vector<LevelModule>& parts);
/// k-linear dual with the contragredient action.
LevelModule dual(const LevelModule& m);

/// coker(A_k^s -> A_k^r) for a relation matrix over the series ring.
Quotient module_from_level_presentation(const Ring& ring, int k, const SeriesMatrix& relations,
                                        size_t rank);

Submodule map_kernel(const LevelMap& f);
Quotient map_cokernel(const LevelMap& f);
struct Image {
  Submodule image;
  MatrixK factorization;  // source -> image coordinates
};
Image map_image(const LevelMap& f);

struct TensorProduct {
  LevelModule module;
  MatrixK project;  // from M (x)_k N, index a * dim N + b
  MatrixK section;
};
TensorProduct tensor_level(const LevelModule& m, const LevelModule& n);
/// f (x) g between tensor products already computed.
MatrixK tensor_maps(const MatrixK& f, const MatrixK& g, const TensorProduct& src,
                    const TensorProduct& dst);

struct HomModule {
  LevelModule module;
  std::vector<MatrixK> basis;  // each N.dim x M.dim
  MatrixK to_matrix(const MatrixK& coords) const;
};
HomModule hom_level(const LevelModule& m, const LevelModule& n);

/// A_k (x)_{A_j} M = M / m^{k+1} M for k < level(M).
Quotient base_change(const LevelModule& m, int k);

/// An invertible A_k-linear map M -> N when one exists.
std::optional<MatrixK> find_isomorphism(const LevelModule& m, const LevelModule& n);
inline bool is_isomorphic(const LevelModule& m, const LevelModule& n) {
  return find_isomorphism(m, n).has_value();
}

}  // namespace adic
