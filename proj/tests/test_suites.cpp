#include "doctest.h"

#include "dhtk/checks.hpp"

using namespace dhtk;

TEST_CASE("bundled property suites pass at fixed seeds") {
  for (std::uint64_t seed : {1ULL, 42ULL, 2024ULL}) {
    for (const auto& name : suiteNames()) {
      SuiteResult r = runSuite(name, seed, 30);
      INFO(name << " seed " << seed << (r.notes.empty() ? "" : ": " + r.notes.front()));
      CHECK(r.trials > 0);
      CHECK(r.passed());
    }
  }
}
