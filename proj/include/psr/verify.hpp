#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace psr {

// One verified invariant: pass iff value <= threshold, where value is a
// residual or margin deficit (smaller is better).
struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Suites: "linalg", "circuits", "protocols", "comb", or "all".
std::vector<CheckResult> verify_suite(const std::string& suite);
bool all_pass(const std::vector<CheckResult>& results);
nlohmann::json to_json(const std::vector<CheckResult>& results);

}  // namespace psr
