#pragma once

// The acceptance sweep: one check per criterion, each with a pinned wall
// clock limit. Shared by the acceptance test binary and `ellfib repro`.

#include <cstdint>
#include <string>
#include <vector>

namespace ellfib {

struct AcceptanceOptions {
  int jobs = 1;
  /// Enumeration budget handed to the census criteria. The F_7 stratum census
  /// enumerates about 3.3e8 pairs, so the default sits above that.
  std::uint64_t budget = 1'000'000'000;
  /// Also run criterion 9 (direct dedup census of F_5, n = 1).
  bool include_slow = false;
  std::uint64_t seed = 20240601;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 9;

/// Name and limit only, marked skipped.
CriterionResult skipped_criterion(int id, const AcceptanceOptions& opts);

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

/// Criteria 1..8, plus 9 when include_slow (otherwise reported as skipped).
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

}  // namespace ellfib
