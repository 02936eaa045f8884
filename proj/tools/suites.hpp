#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace profet::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();
/// Runs the property checks of one module; budget bounds enumeration sizes.
std::vector<CheckResult> run_suite(const std::string& name, std::size_t budget);

}  // namespace profet::cli
