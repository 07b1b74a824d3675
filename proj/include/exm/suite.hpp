#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace exm::suite {

struct CriterionResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int workers = 1;
  // Makes the metric-axiom battery include a broken distance table; the
  // run must then fail, which is itself checked by the negative-control
  // criterion.
  bool inject_corruption = false;
  // Restrict to these criterion ids; empty runs everything.
  std::vector<std::string> only;
};

std::vector<std::string> criterion_ids();

std::vector<CriterionResult> run_suite(const SuiteOptions& options);

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace exm::suite
