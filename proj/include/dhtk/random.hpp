#pragma once

#include <cstdint>
#include <random>

#include "dhtk/diffpoly.hpp"
#include "dhtk/series.hpp"
#include "dhtk/solver.hpp"
#include "dhtk/weil.hpp"

namespace dhtk {

/// Seeded generators for property checks. Every draw goes through one
/// mt19937_64 so a seed fixes the whole sequence.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi);
  bool coin(double p = 0.5);
  /// Nonzero-denominator rational with |num|, den <= height; mostly integers.
  Rational rational(long height, bool allowZero = true);
  /// Exact series with up to `terms` terms and exponents in [lo, lo+span)
  /// stepping by 1/ramification; recursive coefficients.
  Series series(int level, int terms, long height, long ramification = 1, long lo = 0,
                long span = 6);
  /// Random differential polynomial in numVars variables.
  DiffPoly diffPoly(int numVars, int maxOrder, int maxDegree, int maxTerms, long height,
                    int level = 0);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// A random non-degenerate problem of order <= 3 and degree <= 3 whose
/// coefficients have height <= 10. Variant 0 lives over Q, variant 1 over
/// Q((t0)) with rational coefficients, variant 2 over Q((t0)) with monomial
/// coefficients c·t0^k and an exact monomial separant value.
DHProblem randomDHProblem(Generator& gen, int variant);

}  // namespace dhtk
