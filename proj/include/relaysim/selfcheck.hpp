#pragma once

// Randomized invariant checks over many small generated instances. Used by
// the `selftest` subcommand and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

namespace relaysim {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, if any
};

std::vector<CheckResult> run_property_suite(std::uint64_t seed, std::size_t min_cases = 1000);

}  // namespace relaysim
