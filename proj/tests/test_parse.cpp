#include "doctest.h"

#include "dhtk/random.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

TEST_CASE("grammar examples") {
  DiffPoly f = P("x1' - x1");
  CHECK(f == DiffPoly::variable({0, 1}, 1) - DiffPoly::variable({0, 0}, 1));
  DiffPoly g = P("x1^(3)*x2 + (1/2)*t0");
  CHECK(g.numVars() == 2);
  CHECK(g.level() == 1);
  CHECK(g.terms().size() == 2);
  CHECK(g.degreeIn({0, 3}) == 1);
  CHECK(g.degreeIn({1, 0}) == 1);
  CHECK(P("x1''") == P("x1^(2)"));
  CHECK(toText(P("x1^(2) + x1''")) == "2*x1''");
  CHECK(P("x1'^3") == power(P("x1'"), 3));
  CHECK(P("(x1)^(3)") == power(P("x1"), 3));
  CHECK(toText(P("x1^(5)")) == "x1^(5)");
}

TEST_CASE("series literals") {
  CHECK(S("1/(1 - t0)", 0).precOrder().has_value());
  CHECK(S("t0^(-1/2)*t1") == Series::monomial(Series::variable(0, 1, makeRational(-1, 2)), 1));
  CHECK(S("O(t1^3)") == Series::bigO(3, 2));
  CHECK(parseValueVec("1, -1") == vv({1, -1}));
  CHECK(parseValueVec("()") == ValueVec());
  CHECK(parseValueVec("inf").isInfinity());
  CHECK(parseValueVec("(1/2, 3)") == ValueVec({makeRational(1, 2), Rational(3)}));
}

TEST_CASE("syntax errors carry a position") {
  try {
    P("x1' + * x1");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.position() == 6);
  }
  CHECK(codeOf([] { P("y + 1"); }) == ErrorCode::UnknownVariable);
  CHECK(codeOf([] { P("x1 / x1"); }) == ErrorCode::SyntaxError);
  CHECK(codeOf([] { P("(1 + x1"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("print then parse is the identity on normal forms") {
  Generator gen(3);
  for (int i = 0; i < 100; ++i) {
    const int level = static_cast<int>(gen.integer(0, 2));
    DiffPoly f = gen.diffPoly(3, 5, 3, 5, 20, level);
    ParseOptions o;
    o.numVars = f.numVars();
    o.minLevel = f.level();
    CHECK(parseDiffPoly(toText(f), o) == f);
  }
}
