#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adic/ring.hpp"

namespace adic {

struct CaseOutcome {
  bool passed = false;
  std::string detail;
};

/// Builds an instance from (seed, size) and checks it. Smaller size means a smaller instance.
using CaseRunner = std::function<CaseOutcome(uint64_t seed, int size)>;

struct ShrinkStep {
  int size = 0;
  bool fails = false;
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  size_t requested = 0, run = 0, passed = 0;
  bool report_only = false;
  std::optional<uint64_t> failing_seed;  // per-case seed of the first failure
  int failing_size = 0;                  // after shrinking
  std::string counterexample;
  std::vector<ShrinkStep> shrink_trace;
  std::vector<std::string> stamps;
  std::vector<std::string> notes;
  double wall_seconds = 0;

  bool ok() const { return report_only || passed == run; }
  /// Plain text; the first line is the only one carrying wall-clock time.
  std::string text() const;
  /// Machine-readable sidecar without timing.
  nlohmann::json json() const;
};

/// Runs `count` cases at max_size with seeds case_seed(seed, i) and shrinks
/// the first failure by retrying its seed at sizes max_size - 1 down to 1.
SuiteReport run_cases(const std::string& name, uint64_t seed, size_t count, int max_size, const CaseRunner& run);

struct SuiteOptions {
  uint64_t seed = 1;
  size_t count = 20;
  std::optional<uint32_t> prime;  // overrides the suite's default prime
};

const std::vector<std::string>& suite_names();
/// Throws InvalidInput for an unknown name.
SuiteReport theorem_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace adic
