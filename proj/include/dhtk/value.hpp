#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "dhtk/rational.hpp"

namespace dhtk {

/// Element of the composed value group Q^k of the tower, or +infinity.
///
/// Coordinate i is the exponent of t_i, so the last coordinate belongs to the
/// outermost series variable. Ordering is reverse-lexicographic: the last
/// coordinate is compared first. Vectors of different length are compared and
/// added after padding the shorter one with zeros at the top, which is the
/// embedding of v(K_k) into v(K_{k+1}) given by constant series.
class ValueVec {
 public:
  ValueVec() = default;
  explicit ValueVec(std::vector<Rational> coords);

  static ValueVec infinity();
  static ValueVec zero(std::size_t height);

  bool isInfinity() const noexcept { return infinite_; }
  std::size_t height() const noexcept { return coords_.size(); }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  /// Zero past the stored length.
  Rational coord(std::size_t i) const;
  /// Last nonzero-padded coordinate at the given height (the top exponent).
  Rational top(std::size_t height) const;

  ValueVec padded(std::size_t height) const;

  ValueVec operator+(const ValueVec& other) const;
  /// infinity - finite = infinity; finite - infinity is rejected.
  ValueVec operator-(const ValueVec& other) const;
  ValueVec operator*(const Rational& scale) const;

  friend std::strong_ordering operator<=>(const ValueVec& a, const ValueVec& b);
  friend bool operator==(const ValueVec& a, const ValueVec& b);

  std::string toString() const;

 private:
  std::vector<Rational> coords_;
  bool infinite_ = false;
};

/// What a truncated series reveals about its valuation: either the exact
/// value, or a lower bound v >= floor where the lowest `unboundedBelow`
/// coordinates of floor stand for -infinity (the series is O(t_j^p) and
/// nothing is known about lower coordinates).
struct ValuationBound {
  ValueVec floor;
  std::size_t unboundedBelow = 0;
  bool exact = true;

  /// Decides v > gamma when the information suffices.
  std::optional<bool> exceeds(const ValueVec& gamma) const;
  /// Decides v >= gamma when the information suffices.
  std::optional<bool> atLeast(const ValueVec& gamma) const;

  std::string toString() const;
};

}  // namespace dhtk
