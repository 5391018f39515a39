#pragma once

#include <span>
#include <vector>

#include "dhtk/diffpoly.hpp"
#include "dhtk/series.hpp"

namespace dhtk {

/// An algebraic point of K{x}/I(f) known on x, x', ..., x^(M): the first
/// order(f)+1 values are the given jet and each later one solves the
/// corresponding derivative of f(x) = 0.
struct ProlongedPoint {
  DiffPoly f;
  int order = 0;
  std::vector<Series> values;

  int level() const { return values.empty() ? f.level() : values.front().level(); }
};

/// Extends an algebraic root of f (in x1 only) along the prolongation
/// relations up to x^(maxOrder). Throws NotARoot, DegeneratePoint,
/// JetTooShort.
ProlongedPoint prolong(const DiffPoly& f, std::span<const Series> jet, int maxOrder,
                       const Tower& tower);

/// Twisted Taylor series of a value sequence phi(δ^j a), j < terms:
///   α_i = (1/i!) Σ_{j<=i} (-1)^(i-j) C(i,j) ∂^(i-j)(values[j])
/// returned one level up as Σ α_i t^i + O(t^terms).
Series taylorSeries(std::span<const Series> values, int terms);

/// T*_phi(x) for the prolonged point; throws InsufficientJet.
Series twistedTaylor(const ProlongedPoint& point, int terms);

/// phi(δ^j p) for j < count, using the prolonged values.
std::vector<Series> valueSequence(const ProlongedPoint& point, const DiffPoly& p, int count);
/// T*_phi(p) for an arbitrary differential polynomial p in x1.
Series taylorImage(const ProlongedPoint& point, const DiffPoly& p, int terms);

/// Whether α - phi(x) has strictly positive top-level valuation, to the
/// available precision.
bool checkValuedTaylor(const ProlongedPoint& point, const Series& alpha);
/// Same test for any difference: every coefficient at a top exponent <= 0 is
/// zero to precision and the precision marker, if any, is positive.
bool hasPositiveTopValuation(const Series& d);

}  // namespace dhtk
