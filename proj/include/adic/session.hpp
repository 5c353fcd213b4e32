#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "adic/fg_complex.hpp"
#include "adic/tower.hpp"

namespace adic {

/// Series as [[exponents], coefficient] pairs; coefficients are residues 0..p-1.
nlohmann::json series_to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const Ring& ring, const nlohmann::json& j);
/// Array of rows of series.
nlohmann::json matrix_to_json(const SeriesMatrix& m);
SeriesMatrix matrix_from_json(const Ring& ring, const nlohmann::json& j, size_t rows, size_t cols);
/// {"rank": r, "relations": rank x s matrix}
nlohmann::json presentation_to_json(const FgPresentation& m);
FgPresentation presentation_from_json(const Ring& ring, const nlohmann::json& j);
/// {"lo": d, "terms": [presentation], "diffs": [matrix]}
nlohmann::json complex_to_json(const FgComplex& c);
FgComplex complex_from_json(const Ring& ring, const nlohmann::json& j);

/// Text form such as "x^2 + 3*x*y - 1". Variables are x, y, z, w for n <= 4,
/// or x1..xn.
TruncatedSeries parse_series(const Ring& ring, const std::string& text);
/// "A", "A0", "A^r", or "A/(f1, f2, ...)".
FgPresentation parse_module(const Ring& ring, const std::string& text);

using SessionObject = std::variant<FgPresentation, FgComplex, IndTorsionModule, LevelModule, LevelComplex>;
std::string kind_of(const SessionObject& o);

/// kind in {level_module, bounded_complex, presentation, fg_complex}. Bounds:
/// dims <= 12, at most 4 terms or degree 4, rank <= 6, and N <= 6.
SessionObject random_instance(const Ring& ring, const std::string& kind, uint64_t seed, int size);

struct SessionResult {
  RingConfig ring;
  nlohmann::json sidecar;  // deterministic, no timing
  std::string text;        // first line carries the wall clock
  bool undetermined = false;
  bool property_failure = false;
};

/// Parse errors report line and column; semantic errors name the object or command.
SessionResult run_session_text(const std::string& source, uint64_t seed = 0);
SessionResult run_session(const std::string& path, uint64_t seed = 0);

}  // namespace adic
