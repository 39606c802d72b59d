#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ecb {

struct SuiteConfig {
  std::string suite = "all";
  int trials = 1000;
  std::uint64_t seed = 20250809;
  Eigen::Index dim = 32;  // truncation dimension of the constrained factor
  int threads = 0;        // 0 = hardware concurrency
};

struct SuiteReport {
  std::string suite;
  int trials;
  int violations;
  double max_ratio;  // worst observed |difference| / bound (or window fill)
  std::uint64_t seed;
};

// Names accepted by run_suite, in report order. "all" expands to every
// entry here; the violation-injecting "harness_selftest" is only run when
// requested by name.
const std::vector<std::string>& suite_names();

// Randomized verification of every implemented inequality on truncated
// one-mode-oscillator spaces. Deterministic for a given master seed and
// trial count, independent of the thread schedule.
std::vector<SuiteReport> run_suite(const SuiteConfig& config);

int total_violations(const std::vector<SuiteReport>& reports);
std::string report_json(const std::vector<SuiteReport>& reports);

}  // namespace ecb
