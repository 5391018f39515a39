#include "doctest.h"

#include "dhtk/error.hpp"
#include "dhtk/random.hpp"
#include "helpers.hpp"

using namespace dhtk;
using dhtk::test::S;
using dhtk::test::same;
using dhtk::test::codeOf;
using dhtk::test::vv;


TEST_CASE("rationals stay in lowest terms") {
  Rational q = makeRational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(parseRational("-10/4") == makeRational(-5, 2));
  CHECK(toString(makeRational(1, 3) + makeRational(1, 6)) == "1/2");
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(6, 2) == 15);
  CHECK(codeOf([] { parseRational("1/0"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("reverse-lexicographic order compares the last coordinate first") {
  CHECK(vv({1, -1}) < vv({0, 0}));
  CHECK(vv({0, 1}) > vv({1000, 0}));
  CHECK(vv({2, 3}) < vv({1, 4}));
  CHECK(ValueVec::infinity() > vv({1000000, 1000000}));
  CHECK(vv({1}) == vv({1, 0}));
  CHECK(vv({1}) < vv({0, 1}));
  CHECK((vv({1, 2}) + vv({3, -1})) == vv({4, 1}));
}

TEST_CASE("field operations") {
  Tower tower = Tower::uniform(2, 1, 4);
  CHECK(S("(1 + t0)*(1 - t0)") == S("1 - t0^2"));
  Series q = divide(S("1", 1), S("1 - t0"), tower);
  CHECK(q == S("1 + t0 + t0^2 + t0^3 + O(t0^4)"));
  CHECK(toText(q) == "1 + t0 + t0^2 + t0^3 + O(t0^4)");
  CHECK(S("t0^(1/2)") * S("t0^(1/2)") == S("t0"));
  CHECK(inverse(S("t0^2"), tower) == S("t0^(-2)"));
  CHECK(codeOf([&] { inverse(Series::bigO(3, 1), tower); }) ==
        ErrorCode::DivisionByIndistinguishableZero);
  CHECK(codeOf([&] { (void)(S("t0") + S("t1")); }) == ErrorCode::LevelMismatch);
}

TEST_CASE("precision propagation") {
  Series a = S("1 + t0 + O(t0^3)");
  Series b = S("t0^2 + O(t0^5)");
  CHECK(*(a + b).precOrder() == 3);
  // v(a) + prec(b) = 5, v(b) + prec(a) = 5.
  CHECK(*(a * b).precOrder() == 5);
  CHECK(*derive(a).precOrder() == 2);
  CHECK(truncate(S("1 + t0 + t0^2"), 2) == S("1 + t0 + O(t0^2)"));
}

TEST_CASE("composed valuation") {
  CHECK(valuation(S("t0*t1^(-1)")) == vv({1, -1}));
  CHECK(valuation(S("t0*t1^(-1)")) < vv({0, 0}));
  CHECK(valuation(embed(S("t0"), 2)) == vv({1, 0}));
  for (long n = 0; n < 20; ++n) {
    CHECK(valuation(S("t1")) > valuation(embed(power(S("t0"), n, {}), 2)));
  }
  CHECK(valuation(Series::zero(2)).isInfinity());
  CHECK(codeOf([] { valuation(Series::bigO(2, 1)); }) == ErrorCode::IndistinguishableFromZero);
  ValuationBound b = valuationBound(S("O(t0^2)"));
  CHECK_FALSE(b.exact);
  CHECK(b.floor == vv({2}));
}

TEST_CASE("derivation of the tower") {
  CHECK(derive(S("t0^2")) == S("2*t0"));
  CHECK(derive(S("t0^(1/2)")) == S("(1/2)*t0^(-1/2)"));
  CHECK(derive(S("t0*t1")) == S("t1 + t0"));
  CHECK(derive(Series(makeRational(5, 3))) == Series(0));
  CHECK(deriveN(S("t0^3"), 3) == S("6", 1));
}

TEST_CASE("residue and angular component") {
  CHECK(angularComponent(S("3*t0^2 + 5*t0^3")) == Series(3));
  CHECK(residue(S("2 + 7*t0")) == Series(2));
  CHECK(angularComponent(S("t0 + t0^3")) == angularComponent(S("t0")));
  CHECK(angularComponent(Series::zero(1)) == Series(0));
  CHECK(residue(S("t0^2")) == Series(0));
  CHECK(codeOf([] { residue(S("t0^(-1)")); }) == ErrorCode::NegativeValuation);
  CHECK(residueSection(Series(5)) == S("5", 1));
  CHECK(residue(residueSection(S("t0 + 1"))) == S("t0 + 1"));
}

TEST_CASE("open balls are strict") {
  std::vector<Series> c{S("1", 1)};
  std::vector<Series> x1{S("1 + t0^3")};
  std::vector<Series> x2{S("1 + t0")};
  CHECK(inOpenBall(x1, c, vv({2})));
  CHECK_FALSE(inOpenBall(x2, c, vv({1})));
  CHECK(inOpenBall(c, c, vv({1000})));
  std::vector<Series> fuzzy{S("1 + O(t0^2)")};
  CHECK(codeOf([&] { inOpenBall(fuzzy, c, vv({3})); }) == ErrorCode::IndistinguishableFromZero);
  CHECK(inOpenBall(fuzzy, c, vv({1})));
}

TEST_CASE("series properties on random samples") {
  Generator gen(7);
  for (int i = 0; i < 200; ++i) {
    const int level = static_cast<int>(gen.integer(1, 2));
    Series a = gen.series(level, 4, 6, 2, -2, 5);
    Series b = gen.series(level, 4, 6, 2, -2, 5);
    CHECK(same(derive(a * b), derive(a) * b + a * derive(b)));
    if (a.isExactZero() || b.isExactZero()) continue;
    ValueVec va = valuation(a), vb = valuation(b);
    CHECK(valuation(a * b) == va + vb);
    Series s = a + b;
    if (!s.isExactZero()) {
      CHECK(valuation(s) >= std::min(va, vb));
      if (va != vb) CHECK(valuation(s) == std::min(va, vb));
    }
    CHECK(angularComponent(a * b) == angularComponent(a) * angularComponent(b));
    if (va == ValueVec::zero(static_cast<std::size_t>(level)))
      CHECK(angularComponent(a) == residue(a));
    Series c = gen.series(level - 1, 3, 6);
    CHECK(residue(residueSection(c)) == c);
    Series d = gen.series(level - 1, 3, 6);
    CHECK(residueSection(c * d) == residueSection(c) * residueSection(d));
  }
}

TEST_CASE("tower configuration") {
  Tower t = towerExtend(Tower(), LevelConfig{2, 8});
  CHECK(t.height() == 1);
  CHECK(t.config(0).ramification == 2);
  CHECK(t.window(1) == 4);
  CHECK(conformsTo(S("t0^(1/2)"), t));
  CHECK_FALSE(conformsTo(S("t0^(1/3)"), t));
}
