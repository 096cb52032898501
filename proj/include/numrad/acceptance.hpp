#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace numrad {

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool passed = false;           // numerical checks only
  nlohmann::ordered_json measured;
  double seconds = 0.0;
  double time_limit = 0.0;       // 0 when the criterion has no runtime bound

  bool within_time() const { return time_limit <= 0.0 || seconds < time_limit; }
  bool ok() const { return passed && within_time(); }
};

struct SuiteReport {
  std::vector<CriterionOutcome> criteria;

  /// Everything except timings; identical across runs with the same seed.
  nlohmann::ordered_json payload() const;
  nlohmann::ordered_json timings() const;
  bool all_ok() const;
};

/// Criteria 1-8 of the built-in verification suite.
SuiteReport run_acceptance(std::uint64_t seed);

/// Criterion 9 from two payloads of run_acceptance with the same seed.
CriterionOutcome determinism_outcome(const std::string& first, const std::string& second);

}  // namespace numrad
