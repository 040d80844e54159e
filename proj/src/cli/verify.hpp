#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reports.hpp"

namespace qplab::cli::detail {

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::string expected;
  bool pass = true;
  /// Reported for context only; never fails the suite.
  bool informational = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  Json details = Json::object();

  bool passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.pass) return false;
    return true;
  }
};

/// Suites: golden, sqrt23, diophantine, all. Throws Error(InvalidArgument)
/// for an unknown name.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace qplab::cli::detail
