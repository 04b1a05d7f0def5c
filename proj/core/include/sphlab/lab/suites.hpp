#pragma once

// Verification suites. Each suite reads its parameters from a Config (absent
// keys take the documented defaults) and returns a RunReport whose checks
// are the assertions of that suite.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sphlab/lab/config.hpp"
#include "sphlab/lab/report.hpp"

namespace sphlab::lab {

struct RunContext {
  std::uint64_t seed = 20240930;
  double budget = 0.0;  // 0 keeps the per-operation defaults
};

struct SuiteInfo {
  std::string name;
  int criterion = 0;
  std::string title;
  double runtime_limit_s = 0.0;
  std::vector<std::string_view> keys;  // accepted parameters
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo& suite_info(std::string_view name);

/// Runs one suite. Budget exhaustion is caught and recorded as a failed
/// check, keeping the rows computed so far. A runtime check against the
/// suite limit is always appended.
RunReport run_suite(std::string_view name, const Config& params, const RunContext& context);

/// Experiment config: `kind` selects the suite, `output` is optional, the
/// remaining keys are suite parameters. Required keys per kind are enforced.
RunReport run_experiment(const Config& config, const RunContext& context);

/// Kinds accepted by run_experiment.
std::vector<std::string> experiment_kinds();

}  // namespace sphlab::lab
