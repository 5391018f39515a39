#include "dhtk/value.hpp"

#include <algorithm>

#include "dhtk/error.hpp"

namespace dhtk {

ValueVec::ValueVec(std::vector<Rational> coords) : coords_(std::move(coords)) {}

ValueVec ValueVec::infinity() {
  ValueVec v;
  v.infinite_ = true;
  return v;
}

ValueVec ValueVec::zero(std::size_t height) {
  return ValueVec(std::vector<Rational>(height, Rational(0)));
}

Rational ValueVec::coord(std::size_t i) const {
  return i < coords_.size() ? coords_[i] : Rational(0);
}

Rational ValueVec::top(std::size_t height) const {
  return height == 0 ? Rational(0) : coord(height - 1);
}

ValueVec ValueVec::padded(std::size_t height) const {
  if (infinite_) return *this;
  ValueVec out = *this;
  if (out.coords_.size() < height) out.coords_.resize(height, Rational(0));
  return out;
}

ValueVec ValueVec::operator+(const ValueVec& other) const {
  if (infinite_ || other.infinite_) return infinity();
  std::size_t h = std::max(height(), other.height());
  std::vector<Rational> c(h);
  for (std::size_t i = 0; i < h; ++i) c[i] = coord(i) + other.coord(i);
  return ValueVec(std::move(c));
}

ValueVec ValueVec::operator-(const ValueVec& other) const {
  if (other.infinite_)
    throw Error(ErrorCode::InvalidInput, "cannot subtract an infinite value");
  if (infinite_) return infinity();
  std::size_t h = std::max(height(), other.height());
  std::vector<Rational> c(h);
  for (std::size_t i = 0; i < h; ++i) c[i] = coord(i) - other.coord(i);
  return ValueVec(std::move(c));
}

ValueVec ValueVec::operator*(const Rational& scale) const {
  if (infinite_) return *this;
  std::vector<Rational> c = coords_;
  for (auto& x : c) x *= scale;
  return ValueVec(std::move(c));
}

std::strong_ordering operator<=>(const ValueVec& a, const ValueVec& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  std::size_t h = std::max(a.height(), b.height());
  for (std::size_t i = h; i-- > 0;) {
    int c = cmp(a.coord(i), b.coord(i));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool operator==(const ValueVec& a, const ValueVec& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::string ValueVec::toString() const {
  if (infinite_) return "inf";
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += dhtk::toString(coords_[i]);
  }
  return s + ")";
}

namespace {

// Compares floor (with its lowest `unbounded` coordinates at -infinity)
// against gamma in reverse-lexicographic order.
std::strong_ordering compareFloor(const ValueVec& floor, std::size_t unbounded,
                                  const ValueVec& gamma) {
  if (gamma.isInfinity()) {
    return floor.isInfinity() ? std::strong_ordering::equal
                              : std::strong_ordering::less;
  }
  if (floor.isInfinity()) return std::strong_ordering::greater;
  std::size_t h = std::max(floor.height(), gamma.height());
  for (std::size_t i = h; i-- > 0;) {
    if (i < unbounded) return std::strong_ordering::less;
    int c = cmp(floor.coord(i), gamma.coord(i));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::optional<bool> ValuationBound::exceeds(const ValueVec& gamma) const {
  auto c = compareFloor(floor, unboundedBelow, gamma);
  if (exact) return c == std::strong_ordering::greater;
  if (c == std::strong_ordering::greater) return true;
  return std::nullopt;
}

std::optional<bool> ValuationBound::atLeast(const ValueVec& gamma) const {
  auto c = compareFloor(floor, unboundedBelow, gamma);
  if (exact) return c != std::strong_ordering::less;
  if (c != std::strong_ordering::less) return true;
  return std::nullopt;
}

std::string ValuationBound::toString() const {
  if (exact) return floor.toString();
  std::string s = ">= (";
  for (std::size_t i = 0; i < floor.height(); ++i) {
    if (i) s += ", ";
    s += i < unboundedBelow ? std::string("-inf") : dhtk::toString(floor.coord(i));
  }
  return s + ")";
}

}  // namespace dhtk
