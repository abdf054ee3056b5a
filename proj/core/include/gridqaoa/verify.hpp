#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gridqaoa {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// "formulas", "lightcone", "embedding", "cat", "optimizer".
const std::vector<std::string>& verify_suite_names();

// Quick self-checks of the invariants behind each module, each against an
// independent oracle. Throws InvalidArgument for an unknown suite.
SuiteReport run_verify_suite(std::string_view suite, std::uint64_t seed);

// Golden-section maximizer of sin^2(g) cos^6(g) on [0, pi/2]; returns
// (argmax, max).
std::pair<double, double> maximize_lambda_profile();

}  // namespace gridqaoa
