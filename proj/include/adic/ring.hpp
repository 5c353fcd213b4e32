#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "adic/matrix.hpp"

namespace adic {

struct RingConfig {
  uint32_t p = 101;  // characteristic of the residue field
  int n = 1;         // number of variables
  int N = 4;         // maximal adic precision

  bool operator==(const RingConfig&) const = default;
};

using Monomial = std::vector<int>;

int monomial_degree(const Monomial& m);

/// All monomials of total degree <= max_degree in n variables, graded
/// lexicographic: by degree, then x1 > x2 > ... within a degree.
std::vector<Monomial> graded_lex_monomials(int n, int max_degree);

/// A = F_p[[x_1..x_n]] known modulo m^{N+1}. Shared and immutable; the monomial
/// basis of A_k is always a prefix of the basis of A_N.
class Ring {
 public:
  explicit Ring(RingConfig cfg);

  const RingConfig& config() const { return d_->cfg; }
  uint32_t p() const { return d_->cfg.p; }
  int vars() const { return d_->cfg.n; }
  int precision() const { return d_->cfg.N; }

  /// Number of monomials of degree <= k, i.e. dim_k A_k.
  size_t level_dim(int k) const;
  size_t basis_size() const { return d_->basis.size(); }
  const Monomial& monomial(size_t idx) const { return d_->basis[idx]; }
  int degree(size_t idx) const { return d_->degrees[idx]; }
  std::optional<size_t> index_of(const Monomial& m) const;
  /// Index of the product of two basis monomials, or nullopt beyond degree N.
  std::optional<size_t> product_index(size_t a, size_t b) const;
  size_t variable_index(int i) const { return 1 + static_cast<size_t>(i); }

  /// Multiplication by a basis monomial on A_k, as a dim(A_k) square matrix.
  MatrixK monomial_action(size_t m, int k) const;
  const MatrixK& variable_action(int i, int k) const;

  /// Coordinate projection A_from -> A_to (from >= to) on free modules of rank r.
  MatrixK free_projection(int from, int to, size_t rank) const;
  /// Coordinate inclusion of A_to coordinates into A_from (a set-theoretic lift).
  MatrixK free_lift(int to, int from, size_t rank) const;

  bool operator==(const Ring& o) const { return d_ == o.d_ || d_->cfg == o.d_->cfg; }

 private:
  struct Data {
    RingConfig cfg;
    std::vector<Monomial> basis;
    std::vector<int> degrees;
    std::vector<size_t> level_dims;
    std::vector<int32_t> products;  // basis_size^2, -1 when degree > N
    std::vector<std::vector<MatrixK>> var_actions;  // [k][i]
  };
  std::shared_ptr<const Data> d_;
};

/// Descriptor of the level ring A_k.
struct LevelRing {
  int level = 0;
  std::vector<Monomial> basis;
};

LevelRing make_level_ring(const Ring& ring, int k);

}  // namespace adic
