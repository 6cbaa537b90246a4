// Acceptance suite runner: one criterion per invocation (for ctest
// granularity) or all of them. Prints one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "pentalab/acceptance.hpp"

int main(int argc, char** argv) {
  pentalab::AcceptanceConfig config;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      config.threads = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      config.seed = unsigned(std::atol(argv[++i]));
    } else {
      ids.push_back(std::atoi(argv[i]));
    }
  }
  std::vector<pentalab::CriterionResult> results;
  if (ids.empty()) {
    results = pentalab::run_all_criteria(config);
  } else {
    for (int id : ids) results.push_back(pentalab::run_criterion(id, config));
  }
  std::fputs(pentalab::format_results(results, true).c_str(), stdout);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
