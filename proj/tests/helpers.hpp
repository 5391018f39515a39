#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "doctest.h"

#include "dhtk/diffpoly.hpp"
#include "dhtk/error.hpp"
#include "dhtk/parse.hpp"
#include "dhtk/series.hpp"

namespace dhtk::test {

inline Series S(const std::string& text, int minLevel = 0) {
  ParseOptions o;
  o.minLevel = minLevel;
  return parseSeries(text, o);
}

inline DiffPoly P(const std::string& text, int minLevel = 0, int numVars = 0) {
  ParseOptions o;
  o.minLevel = minLevel;
  o.numVars = numVars;
  return parseDiffPoly(text, o);
}

inline std::vector<Series> L(const std::string& text, int minLevel = 0) {
  ParseOptions o;
  o.minLevel = minLevel;
  return parseSeriesList(text, o);
}

/// Equal wherever both are known.
inline bool same(const Series& a, const Series& b) { return (a - b).isZeroToPrecision(); }

/// Error code raised by body; fails the test when nothing is thrown.
inline ErrorCode codeOf(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

inline ValueVec vv(std::initializer_list<long> xs) {
  std::vector<Rational> c;
  for (long x : xs) c.emplace_back(x);
  return ValueVec(c);
}

}  // namespace dhtk::test
