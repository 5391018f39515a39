#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dhtk/weil.hpp"

namespace dhtk {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> notes;
  bool passed() const { return failures == 0; }
};

/// series, diffpoly, parse, taylor, solver, weil.
const std::vector<std::string>& suiteNames();
/// Runs one named property suite; "all" is handled by the caller.
SuiteResult runSuite(const std::string& name, std::uint64_t seed, int trials);

/// Q(θ)/Q with θ³ = 2, basis (1, θ, θ²), trivial valuation.
FiniteFreeAlgebra cubicExample();

}  // namespace dhtk
