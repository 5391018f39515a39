#include "doctest.h"

#include "dhtk/random.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

TEST_CASE("order and separant") {
  CHECK(order(P("x1'' + x1*x1'"), 0) == 2);
  CHECK(order(P("x1"), 0) == 0);
  CHECK(order(P("x1'^3 - x1"), 0) == 1);
  CHECK(separant(P("x1'' + x1*x1'"), 0) == P("1"));
  CHECK(separant(P("x1'^2 - x1"), 0) == P("2*x1'"));
  CHECK(separant(P("x1' - x1"), 0) == P("1"));
  CHECK(codeOf([] { order(P("x1", 0, 2), 1); }) == ErrorCode::VariableAbsent);
  CHECK(codeOf([] { separant(P("t0 + 1"), 0); }) == ErrorCode::VariableAbsent);
}

TEST_CASE("ring derivation") {
  CHECK(ringDerive(P("x1' - x1")) == P("x1'' - x1'"));
  CHECK(ringDerive(P("x1'^2 - x1")) == P("2*x1'*x1'' - x1'"));
  CHECK(ringDerive(P("7/3")).isZero());
  CHECK(ringDerive(P("t0^2*x1")) == P("2*t0*x1 + t0^2*x1'"));
}

TEST_CASE("algebraic evaluation") {
  CHECK(algEval(P("x1' - x1"), Jet::single(L("1, 1"))) == Series(0));
  CHECK(algEval(P("x1'^2 - x1"), Jet::single(L("1, 1"))) == Series(0));
  CHECK(algEval(separant(P("x1'^2 - x1"), 0), Jet::single(L("1, 1"))) == Series(2));
  CHECK(algEval(P("x1'' + x1"), Jet::single(L("0, 5, 0"))) == Series(0));
  CHECK(codeOf([] { algEval(P("x1'' + x1"), Jet::single(L("0, 5"))); }) ==
        ErrorCode::JetTooShort);
}

TEST_CASE("differential evaluation") {
  Series e = S("1 + t0 + (1/2)*t0^2 + (1/6)*t0^3 + (1/24)*t0^4 + (1/120)*t0^5 + "
               "(1/720)*t0^6 + (1/5040)*t0^7 + O(t0^8)");
  Series r = diffEval(P("x1' - x1", 1), e);
  CHECK(r.isZeroToPrecision());
  CHECK(*r.precOrder() == 7);
  CHECK(diffEval(P("x1'", 1), S("t0")) == S("1", 1));
  CHECK(diffEval(P("x1*x1'", 1), S("t0")) == S("t0"));
  CHECK(codeOf([] { diffEval(P("x1''", 1), S("t0 + O(t0^2)")); }) ==
        ErrorCode::InsufficientPrecision);
}

TEST_CASE("vanishing factor selection") {
  std::vector<DiffPoly> pair{P("x1' - x1"), P("x1' + x1")};
  CHECK(selectVanishingFactor(pair, Jet::single(L("1, 1"))) == 0);
  CHECK(algEval(separant(pair[0], 0), Jet::single(L("1, 1"))) == Series(1));
  std::vector<DiffPoly> linear{P("x1 - t0"), P("x1 + t0")};
  CHECK(selectVanishingFactor(linear, Jet::single({S("t0")})) == 0);
  CHECK(codeOf([&] { selectVanishingFactor(pair, Jet::single(L("0, 0"))); }) ==
        ErrorCode::MultipleVanishingFactors);
  CHECK(codeOf([&] { selectVanishingFactor(pair, Jet::single(L("1, 2"))); }) ==
        ErrorCode::NoVanishingFactor);
}

TEST_CASE("selection agrees with brute-force evaluation") {
  Generator gen(11);
  for (int i = 0; i < 100; ++i) {
    std::vector<DiffPoly> factors;
    const int count = static_cast<int>(gen.integer(1, 3));
    for (int k = 0; k < count; ++k) factors.push_back(gen.diffPoly(1, 1, 2, 3, 3));
    std::vector<Series> jet{Series(gen.integer(-2, 2)), Series(gen.integer(-2, 2))};
    int vanishing = 0;
    std::size_t which = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (algEval(factors[k], Jet::single(jet)).isExactZero()) {
        ++vanishing;
        which = k;
      }
    }
    try {
      std::size_t got = selectVanishingFactor(factors, Jet::single(jet));
      CHECK(vanishing == 1);
      CHECK(got == which);
    } catch (const Error& e) {
      if (vanishing == 0) CHECK(e.code() == ErrorCode::NoVanishingFactor);
      if (vanishing > 1) CHECK(e.code() == ErrorCode::MultipleVanishingFactors);
      if (vanishing == 1) CHECK(e.code() == ErrorCode::DegeneratePoint);
    }
  }
}

TEST_CASE("separant is the exact difference quotient") {
  // f(.., a + h, ..) - f(.., a, ..) = h·s(a) + O(h²): check the linear term
  // through the exact identity (f(a+h) - f(a-h)) / 2h = s(a) + h²·(...).
  Generator gen(5);
  for (int i = 0; i < 100; ++i) {
    DiffPoly f = gen.diffPoly(1, 2, 3, 4, 6);
    if (!f.involves(0)) continue;
    const int n = order(f, 0);
    std::vector<Series> jet;
    for (int j = 0; j <= n; ++j) jet.push_back(Series(gen.rational(4)));
    // The difference quotient is a polynomial in h: evaluate it at three
    // points and extrapolate to h = 0 (degree of f is at most 3 in x^(n)).
    auto quotient = [&](const Rational& h) -> Rational {
      std::vector<Series> plus = jet, minus = jet;
      plus[static_cast<std::size_t>(n)] = plus[static_cast<std::size_t>(n)] + Series(h);
      minus[static_cast<std::size_t>(n)] = minus[static_cast<std::size_t>(n)] - Series(h);
      Rational d = (algEval(f, Jet::single(plus)) - algEval(f, Jet::single(minus))).scalar();
      return d / (2 * h);
    };
    // Central quotient is even in h of degree <= 2: q(h) = s + c·h².
    Rational q1 = quotient(1), q2 = quotient(2);
    Rational s = (4 * q1 - q2) / 3;
    CHECK(s == algEval(separant(f, 0), Jet::single(jet)).scalar());
  }
}
