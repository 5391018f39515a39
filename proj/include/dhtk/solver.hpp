#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dhtk/diffpoly.hpp"
#include "dhtk/series.hpp"
#include "dhtk/taylor.hpp"
#include "dhtk/value.hpp"

namespace dhtk {

// ---------------------------------------------------------------------------
// Hensel lifting

struct HenselResult {
  std::vector<Series> roots;
  int iterations = 0;
  /// Top-level residual valuation before each step and after the last one.
  std::vector<Rational> residualHistory;
  /// Top-level valuation of det J at the start.
  Rational jacobianValuation;
  ValuationBound residual;
};

/// Newton iteration for a square polynomial system. Variables x1..x_k of the
/// system are the fixed values, the remaining ones are lifted from approx.
/// Requires v(F) > 2·v(det J) at the top level; stops once F = O(t^target).
/// Throws SingularJacobian, DominanceFailure, PrecisionExhausted.
HenselResult henselLiftSystem(std::span<const DiffPoly> system, std::span<const Series> fixed,
                              std::span<const Series> approx, const Rational& targetPrec,
                              const Tower& tower = {});

/// Top-level valuation with coefficients indistinguishable from zero
/// skipped; precOrder for a truncated zero and nullopt for exact zero.
std::optional<Rational> topValuation(const Series& s);

// ---------------------------------------------------------------------------
// Differentially henselian problems

/// (f, c̄, γ): f in x1 of order n, c̄ = (c_0..c_n), γ in the value group of
/// the base field. The base level is the highest of f's coefficients, the
/// jet entries and the height of γ.
struct DHProblem {
  DiffPoly f;
  std::vector<Series> jet;
  ValueVec gamma;

  int order() const;
  int level() const;
  /// Lifts f and the jet to level() and checks the problem invariants.
  /// Throws NotARoot, DegeneratePoint, JetTooShort, InvalidInput.
  DHProblem normalized() const;
};

struct DHSolution {
  Series b;
  ProlongedPoint point;
  int terms = 0;
  ValuationBound residual;
  bool ballCheck = false;
};

/// b = T*(prolong(f, c̄)) with N terms, one level above the problem.
/// Throws NotARoot, DegeneratePoint, InsufficientPrecision.
DHSolution solveDH(const DHProblem& problem, int terms, const Tower& tower = {});

/// diffEval(f, b) zero to precision and Jet_n(b) in the open γ-ball around c̄.
/// Throws UndecidedAtPrecision when precision cannot decide.
bool checkDL(const DHProblem& problem, const Series& b);

/// min_i v(derive^i(b) - c_i), i <= n; lower bounds where b is truncated.
ValueVec closeness(const DHProblem& problem, const Series& b);

// ---------------------------------------------------------------------------
// Points of differentially finitely generated algebras

struct AlgebraPresentation {
  std::vector<std::string> generators;
  /// DiffPolys in variables x1..x_m, x_i standing for generators[i-1].
  std::vector<DiffPoly> relations;
  /// Jet of each generator at the base point.
  std::optional<std::map<std::string, std::vector<Series>>> basePoint;
};

struct AlgebraPoint {
  std::map<std::string, Series> images;
  /// All relations vanish to precision at the images.
  bool relationsVanish = false;
  bool ballCheck = false;
};

/// Differential point near the base point, one level up. Every relation must
/// have a distinct leading generator (its highest-index one); generators
/// without a relation are free and map to c_0 + t. Throws
/// NonTriangularPresentation, DegeneratePoint, NotARoot, InvalidInput.
AlgebraPoint solveAlgebraPoint(const AlgebraPresentation& algebra, const ValueVec& gamma,
                               int terms, const Tower& tower = {});

/// The tower with one more stage.
Tower towerExtend(const Tower& tower, LevelConfig next = {});

}  // namespace dhtk
