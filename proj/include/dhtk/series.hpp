#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dhtk/rational.hpp"
#include "dhtk/value.hpp"

namespace dhtk {

/// Per-level configuration of the tower Q ⊂ Q((t0)) ⊂ Q((t0))((t1)) ⊂ ...
/// Level i+1 uses exponents in (1/ramification)·Z for t_i and keeps `terms`
/// lattice steps of relative precision when a computation has to truncate.
struct LevelConfig {
  long ramification = 1;
  long terms = 16;
};

class Tower {
 public:
  Tower() = default;
  explicit Tower(std::vector<LevelConfig> levels);
  static Tower uniform(std::size_t height, long ramification = 1, long terms = 16);

  std::size_t height() const noexcept { return levels_.size(); }
  /// Configuration of series variable t_index; defaults past the height.
  LevelConfig config(std::size_t index) const;
  const std::vector<LevelConfig>& levels() const noexcept { return levels_; }

  Tower extended(LevelConfig next = {}) const;
  /// Relative truncation window (terms / ramification) for elements of the
  /// given series level, whose top variable is t_{level-1}.
  Rational window(int level) const;

 private:
  std::vector<LevelConfig> levels_;
};

/// A truncated generalized Laurent series at some level of the tower.
///
/// Level 0 is an exact rational. An element of level k >= 1 is a finite sum
/// of terms c·t_{k-1}^e with coefficients of level k-1, plus an optional
/// precision marker O(t_{k-1}^p): coefficients at exponents >= p are unknown.
/// Terms are sorted by exponent, all exponents lie below p, and no stored
/// coefficient is exactly zero. A stored coefficient can still be
/// indistinguishable from zero when it is itself truncated, e.g. O(t0^5)·t1.
class Series {
 public:
  struct Term;

  Series();
  explicit Series(const Rational& q);
  explicit Series(long q);

  static Series zero(int level);
  static Series constant(const Rational& q, int level);
  /// t_index^exponent as an element of the given level (> index).
  static Series variable(int index, int level, const Rational& exponent = 1);
  /// coeff · t^exponent one level above coeff.
  static Series monomial(const Series& coeff, const Rational& exponent);
  /// 0 + O(t_{level-1}^prec).
  static Series bigO(const Rational& prec, int level);
  /// Builds and normalizes; coefficients must all have level-1.
  static Series fromTerms(int level, std::vector<Term> terms,
                          std::optional<Rational> precOrder = std::nullopt);

  int level() const noexcept { return level_; }
  /// Value of a level-0 element.
  const Rational& scalar() const noexcept { return scalar_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const std::optional<Rational>& precOrder() const noexcept { return prec_; }

  bool isExactZero() const;
  /// No known nonzero coefficient anywhere (exact zero included).
  bool isZeroToPrecision() const;
  /// No truncation at any level.
  bool isExact() const;
  /// Rational constant (level 0 value, or c·t^0 exactly, recursively).
  std::optional<Rational> asRational() const;

  /// Coefficient of t^exponent, of level-1; zero when absent. Throws
  /// InsufficientPrecision when the exponent lies at or past precOrder.
  Series coefficient(const Rational& exponent) const;
  /// Least stored exponent, or precOrder when nothing is stored, or nullopt
  /// for exact zero. A lower bound for the top-level valuation.
  std::optional<Rational> lowestExponent() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  void normalize();

  int level_ = 0;
  Rational scalar_;
  std::vector<Term> terms_;
  std::optional<Rational> prec_;
};

struct Series::Term {
  Rational exponent;
  Series coeff;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
Series scale(const Series& a, const Rational& q);
/// Integer power; negative exponents go through inverse().
Series power(const Series& a, long exponent, const Tower& tower);

/// 1/b, truncated to the configured window (or relWindow, in units of the top
/// exponent, when given). Exact when b is an exact monomial.
Series inverse(const Series& b, const Tower& tower,
               std::optional<Rational> relWindow = std::nullopt);
Series divide(const Series& a, const Series& b, const Tower& tower);
/// Drops top-level terms at exponents >= prec and caps precOrder there.
Series truncate(const Series& a, const Rational& prec);

/// Derivation of the tower: zero on Q and coefficientwise derivation plus
/// d/dt on each new level, with (d/dt) t^q = q·t^(q-1).
Series derive(const Series& a);
Series deriveN(const Series& a, int times);

/// Lifts a to a higher level as a constant in the new variables.
Series embed(const Series& a, int level);

ValuationBound valuationBound(const Series& a);
/// Exact value; throws IndistinguishableFromZero for truncated near-zeros.
ValueVec valuation(const Series& a);

Series residue(const Series& a);
Series angularComponent(const Series& a);
Series residueSection(const Series& c);

/// Open ball test: valuation(x_i - c_i) > gamma for every i. Throws
/// IndistinguishableFromZero when the available precision cannot decide.
bool inOpenBall(std::span<const Series> xs, std::span<const Series> cs,
                const ValueVec& gamma);

/// Whether every top-level exponent of a lies in (1/d)Z for the configured d,
/// recursively.
bool conformsTo(const Series& a, const Tower& tower);

/// Human-readable form, e.g. "1 + t0 + (1/2)*t0^2 + O(t0^3)".
std::string toText(const Series& a);
/// A non-rational coefficient as printed in front of a monomial: |c| when c
/// prints with a leading minus (negative is set), parenthesized unless it is
/// a single exact term.
std::string coefficientText(const Series& c, bool& negative);

}  // namespace dhtk
