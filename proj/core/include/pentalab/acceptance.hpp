#pragma once

#include <string>
#include <vector>

namespace pentalab {

/// Knobs reused by the CLI verify-all command; defaults reproduce the
/// published checks.
struct AcceptanceConfig {
  int threads = 4;
  unsigned seed = 20240817;
  int rp3_empty_max_abs = 5;
  int rp3_hit_max_abs = 6;
  int rp4_empty_max_abs = 6;
  int rp4_hit_max_abs = 7;
  /// Multiplies every numeric tolerance; 1e-15/1e-2-style perturbations give
  /// controlled failure listings.
  double tolerance_scale = 1.0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> detail;
};

CriterionResult run_criterion(int id, const AcceptanceConfig& config);

/// All eleven criteria in order.
std::vector<CriterionResult> run_all_criteria(const AcceptanceConfig& config);

/// One "criterion N PASS/FAIL title" line per entry plus detail lines.
std::string format_results(const std::vector<CriterionResult>& results, bool with_detail);

}  // namespace pentalab
