#pragma once

#include <climits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adic/level_module.hpp"

namespace adic {

/// Cohomologically graded bounded complex of A_k-modules; terms[i] sits in
/// degree lo + i and diffs[i] : terms[i] -> terms[i+1].
struct LevelComplex {
  Ring ring;
  int level = 0;
  int lo = 0;
  std::vector<LevelModule> terms;
  std::vector<MatrixK> diffs;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_range(int deg) const { return deg >= lo && deg <= hi(); }
  /// Zero module outside [lo, hi].
  LevelModule term(int deg) const;
  /// d^deg : C^deg -> C^{deg+1}, zero outside the range.
  MatrixK diff(int deg) const;
  /// Throws naming the degree where d o d != 0 or a map is not linear.
  void validate() const;
};

LevelComplex make_complex(const Ring& ring, int level, int lo, std::vector<LevelModule> terms,
                          std::vector<MatrixK> diffs);
LevelComplex single_term(const LevelModule& m, int degree);
LevelComplex zero_complex(const Ring& ring, int level);

Subquotient cohomology(const LevelComplex& c, int i);
/// H(f) between already computed cohomology modules; f maps cycles to cycles.
MatrixK induced_map(const Subquotient& from, const Subquotient& to, const MatrixK& f);

constexpr int kPlusInfinity = INT_MAX;
constexpr int kMinusInfinity = INT_MIN;

struct CohomologyProfile {
  int inf = kPlusInfinity;
  int sup = kMinusInfinity;
  int amp = kMinusInfinity;
  std::map<int, size_t> dims;  // nonzero H^i only
  bool is_zero() const { return dims.empty(); }
  std::string to_string() const;
};
CohomologyProfile profile(const LevelComplex& c);
CohomologyProfile profile_from_dims(const std::map<int, size_t>& dims);
std::string bound_to_string(int v);

/// Sum of (-1)^i dim C^i.
long euler_characteristic(const LevelComplex& c);
long cohomology_euler_characteristic(const LevelComplex& c);

/// M[s]^i = M^{i+s}, differential multiplied by (-1)^s.
LevelComplex shift(const LevelComplex& c, int s);

struct ChainMap {
  LevelComplex source;
  LevelComplex target;
  std::map<int, MatrixK> maps;

  /// Zero matrix for degrees without an entry.
  MatrixK at(int deg) const;
  void validate() const;
};
ChainMap identity_map(const LevelComplex& c);
MatrixK induced_map(const ChainMap& f, int i);
bool is_quasi_iso(const ChainMap& f);

struct Truncation {
  LevelComplex complex;
  ChainMap map;  // into C for the <= side, out of C for the >= side
};
/// ... -> C^{i-1} -> Z^i -> 0
Truncation truncate_le(const LevelComplex& c, int i);
/// 0 -> C^i / B^i -> C^{i+1} -> ...
Truncation truncate_ge(const LevelComplex& c, int i);

struct Cone {
  LevelComplex complex;  // cone^i = X^{i+1} (+) Y^i
  ChainMap from_target;  // Y -> cone
  ChainMap to_shift;     // cone -> X[1]
};
Cone cone(const ChainMap& f);

/// Checks exactness of ... -> H^i X -> H^i Y -> H^i cone -> H^{i+1} X -> ... in every degree.
bool long_exact_sequence_exact(const ChainMap& f, const Cone& c);

struct TensorComplex {
  LevelComplex complex;
  std::map<std::pair<int, int>, TensorProduct> pieces;  // (p, q) -> M^p (x) N^q
  std::map<std::pair<int, int>, size_t> offsets;        // position inside the total term
};
/// Total complex, d = d (x) 1 + (-1)^p 1 (x) d.
TensorComplex tensor(const LevelComplex& m, const LevelComplex& n);

}  // namespace adic
