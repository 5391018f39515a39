#pragma once

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dhtk/series.hpp"

namespace dhtk {

/// The formal variable x_{var+1}^(order).
struct VarKey {
  int var = 0;
  int order = 0;
  auto operator<=>(const VarKey&) const = default;
};

/// Product of powers of formal variables, factors sorted by VarKey.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(VarKey key, int exponent = 1);

  const std::vector<std::pair<VarKey, int>>& factors() const noexcept { return factors_; }
  bool isOne() const noexcept { return factors_.empty(); }
  int degree() const;
  int exponentOf(VarKey key) const;
  Monomial withExponent(VarKey key, int exponent) const;

  Monomial operator*(const Monomial& other) const;
  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::pair<VarKey, int>> factors_;
};

/// Degree-lexicographic order, greatest first: higher total degree first,
/// then lexicographic on the keys listed from the largest downwards.
struct DegLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse differential polynomial in x1..xm with coefficients at one tower
/// level. Exactly-zero coefficients are never stored.
class DiffPoly {
 public:
  using TermMap = std::map<Monomial, Series, DegLexGreater>;

  explicit DiffPoly(int numVars = 1, int level = 0);
  static DiffPoly constant(const Series& c, int numVars = 1);
  static DiffPoly variable(VarKey key, int numVars, int level = 0);
  static DiffPoly term(const Series& c, const Monomial& m, int numVars);

  int numVars() const noexcept { return numVars_; }
  int level() const noexcept { return level_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool isZero() const noexcept { return terms_.empty(); }
  bool isConstant() const;
  bool involves(int var) const;
  std::set<VarKey> keys() const;
  int degree() const;
  int degreeIn(VarKey key) const;

  /// Accumulates c·m in place; used by builders.
  void addTerm(const Monomial& m, const Series& c);

  DiffPoly liftedTo(int level) const;
  DiffPoly withNumVars(int numVars) const;

  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a);
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Series& c, const DiffPoly& a);
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  int numVars_;
  int level_;
  TermMap terms_;
};

DiffPoly power(const DiffPoly& f, int exponent);

/// Largest n such that x_var^(n) occurs; throws VariableAbsent.
int order(const DiffPoly& f, int var);
/// Formal partial derivative with respect to one formal variable.
DiffPoly partial(const DiffPoly& f, VarKey key);
/// ∂f/∂x_var^(order(f, var)).
DiffPoly separant(const DiffPoly& f, int var);
/// The ring derivation: coefficients are derived in the tower and
/// x^(j) -> x^(j+1).
DiffPoly ringDerive(const DiffPoly& f);

/// Values of x_i^(j) for j up to some bound per variable.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<std::vector<Series>> perVar);
  static Jet single(std::vector<Series> values);

  std::size_t numVars() const noexcept { return perVar_.size(); }
  const std::vector<Series>& values(int var) const;
  bool has(VarKey key) const;
  const Series& at(VarKey key) const;
  /// Highest level among the entries.
  int level() const;

 private:
  std::vector<std::vector<Series>> perVar_;
};

/// Plain substitution into f_alg; throws JetTooShort.
Series algEval(const DiffPoly& f, const Jet& jet);
/// f(a_1, ..., a_m) using the tower derivation on each argument. Throws
/// InsufficientPrecision when a truncated argument a with precision p has
/// p - order <= min(lowest exponent of a, 0).
Series diffEval(const DiffPoly& f, std::span<const Series> args);
Series diffEval(const DiffPoly& f, const Series& a);

/// Index of the unique factor vanishing at the jet. Throws NoVanishingFactor /
/// MultipleVanishingFactors, and DegeneratePoint when the selected factor
/// does not carry the full order with a nonvanishing separant.
std::size_t selectVanishingFactor(std::span<const DiffPoly> factors, const Jet& jet);

using VariableNamer = std::function<std::string(int var)>;
std::string defaultVariableName(int var);
/// Prints in degree-lex order. Derivatives up to third order use apostrophes,
/// higher ones x1^(k).
std::string toText(const DiffPoly& f, const VariableNamer& namer = defaultVariableName);

}  // namespace dhtk
