#pragma once

// Property checks per module and the acceptance criteria, as report rows.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatchain/cubchain.hpp"

namespace flatchain {

using BoundaryFn = std::function<CoordChain(const CoordChain&)>;

struct VerifyOptions {
  std::uint64_t seed = 42;
  // Replaces the chain boundary in the boundary checks; empty means boundary().
  BoundaryFn boundary;
};

struct CheckResult {
  std::string id;
  std::string module;
  std::string citation;  // the property being checked
  bool passed = false;
  std::string detail;
  double seconds = 0;
  bool gated = true;  // ungated rows are reported but never fail the run
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Suites: the module names, "acceptance" and "all".
const std::vector<std::string>& suite_names();
VerifyReport run_verify(const std::string& suite, const VerifyOptions& options = {});

// Timings vary between runs; everything else is reproducible for a fixed seed.
nlohmann::json report_to_json(const VerifyReport& report, bool with_timing = true);

}  // namespace flatchain
