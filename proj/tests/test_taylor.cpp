#include "doctest.h"

#include "dhtk/random.hpp"
#include "dhtk/taylor.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

TEST_CASE("prolongation") {
  ProlongedPoint e = prolong(P("x1' - x1"), L("1, 1"), 5, {});
  REQUIRE(e.values.size() == 6);
  for (const auto& v : e.values) CHECK(v == Series(1));

  ProlongedPoint q = prolong(P("x1'^2 - x1"), L("1, 1"), 4, {});
  CHECK(q.values == L("1, 1, 1/2, 0, 0"));

  CHECK(codeOf([] { prolong(P("x1' - x1"), L("1, 2"), 3, {}); }) == ErrorCode::NotARoot);
  CHECK(codeOf([] { prolong(P("x1'^2 - x1"), L("0, 0"), 3, {}); }) ==
        ErrorCode::DegeneratePoint);
  CHECK(codeOf([] { prolong(P("x1'' - x1"), L("1"), 3, {}); }) == ErrorCode::JetTooShort);
}

TEST_CASE("twisted Taylor series") {
  Series e = twistedTaylor(prolong(P("x1' - x1"), L("1, 1"), 5, {}), 6);
  CHECK(e == S("1 + t0 + (1/2)*t0^2 + (1/6)*t0^3 + (1/24)*t0^4 + (1/120)*t0^5 + O(t0^6)"));

  ProlongedPoint q = prolong(P("x1'^2 - x1"), L("1, 1"), 3, {});
  Series b = twistedTaylor(q, 4);
  CHECK(b == S("1 + t0 + (1/4)*t0^2 + O(t0^4)"));
  Series square = S("(1 + t0/2)^2");
  CHECK(same(b, square));
  CHECK(diffEval(P("x1'^2 - x1", 1), b).isZeroToPrecision());

  Series c = twistedTaylor(prolong(P("x1' + 0*x1"), L("3, 0"), 4, {}), 5);
  CHECK(c == S("3 + O(t0^5)"));

  CHECK(codeOf([&] { twistedTaylor(q, 6); }) == ErrorCode::InsufficientJet);
}

TEST_CASE("valued Taylor property") {
  ProlongedPoint e = prolong(P("x1' - x1"), L("1, 1"), 5, {});
  Series alpha = twistedTaylor(e, 6);
  CHECK(checkValuedTaylor(e, alpha));
  CHECK(checkValuedTaylor(e, twistedTaylor(e, 1)));
  CHECK_FALSE(checkValuedTaylor(e, alpha + S("1", 1)));
}

TEST_CASE("Taylor over a series field") {
  // x' = x over Q((t0)) through c0 = t0: prolonged values t0, t0, ...
  std::vector<Series> jet{S("t0"), S("t0")};
  ProlongedPoint p = prolong(P("x1' - x1", 1), jet, 6, {});
  Series alpha = twistedTaylor(p, 7);
  CHECK(alpha.level() == 2);
  Series d = alpha;
  for (int n = 0; n <= 1; ++n) {
    if (n) d = derive(d);
    CHECK(d.coefficient(0) == S("t0"));
  }
  Series r = diffEval(P("x1' - x1", 2), alpha);
  CHECK(r.isZeroToPrecision());
  CHECK(*r.precOrder() >= 6);
}

TEST_CASE("T* commutes with the derivation") {
  Generator gen(21);
  for (int i = 0; i < 40; ++i) {
    DHProblem p = randomDHProblem(gen, i % 3).normalized();
    const int N = 8;
    ProlongedPoint point = prolong(p.f, p.jet, N, {});
    Series alpha = twistedTaylor(point, N);
    std::vector<Series> shifted(point.values.begin() + 1, point.values.end());
    Series beta = taylorSeries(shifted, N - 1);
    CHECK(same(truncate(derive(alpha), N - 1), beta));

    DiffPoly a = gen.diffPoly(1, 2, 2, 3, 5, p.level());
    DiffPoly b = gen.diffPoly(1, 2, 2, 3, 5, p.level());
    const int M = 5;
    Series ta = taylorImage(point, a, M), tb = taylorImage(point, b, M);
    CHECK(same(taylorImage(point, a * b, M), ta * tb));
    CHECK(same(taylorImage(point, a + b, M), ta + tb));
  }
}
