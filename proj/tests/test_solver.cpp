#include "doctest.h"

#include "dhtk/random.hpp"
#include "dhtk/solver.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

namespace {

DHProblem problem(const std::string& f, const std::string& jet, const std::string& gamma) {
  return DHProblem{P(f), L(jet), parseValueVec(gamma)};
}

}  // namespace

TEST_CASE("Hensel lifting") {
  std::vector<DiffPoly> sqrt1t{P("x1^2 - (1 + t0)")};
  std::vector<Series> one{S("1", 1)};
  HenselResult r = henselLiftSystem(sqrt1t, {}, one, 4);
  CHECK(r.roots[0] == S("1 + t0/2 - t0^2/8 + t0^3/16 + O(t0^4)"));
  CHECK(r.iterations <= 4);

  std::vector<DiffPoly> lin{P("x1 - 7")};
  std::vector<Series> seven{Series(7)};
  HenselResult l = henselLiftSystem(lin, {}, seven, 10);
  CHECK(l.roots[0] == S("7", 1));
  CHECK(l.roots[0].isExact());

  std::vector<DiffPoly> sq{P("x1^2")};
  std::vector<Series> zero{Series(0)};
  CHECK(codeOf([&] { henselLiftSystem(sq, {}, zero, 4); }) == ErrorCode::SingularJacobian);

  // v(F) = 0 is not above 2·v(J) = 2.
  std::vector<DiffPoly> weak{P("x1^2 - t0^2 - 1")};
  std::vector<Series> tt{S("t0")};
  CHECK(codeOf([&] { henselLiftSystem(weak, {}, tt, 4); }) == ErrorCode::DominanceFailure);
}

TEST_CASE("Hensel lifting of a system with fixed values") {
  // x2 + x3 = x1, x2·x3 = t0 with x1 = 1 fixed: roots near (1, 0).
  std::vector<DiffPoly> sys{P("x2 + x3 - x1", 1, 3), P("x2*x3 - t0", 1, 3)};
  std::vector<Series> fixed{S("1", 1)};
  std::vector<Series> approx{S("1", 1), S("0", 1)};
  HenselResult r = henselLiftSystem(sys, fixed, approx, 6);
  Series x = r.roots[0], y = r.roots[1];
  CHECK(same(x + y, S("1", 1)));
  Series prod = x * y - S("t0");
  CHECK(prod.isZeroToPrecision());
  CHECK(*prod.precOrder() >= 6);
  // v(d - approx) > ρ0 - δ with ρ0 = 1, δ = 0.
  CHECK(valuation(y) == vv({1}));
}

TEST_CASE("Newton residual at least doubles") {
  std::vector<DiffPoly> f{P("x1^3 - 8 - t0")};
  std::vector<Series> two{S("2", 1)};
  HenselResult r = henselLiftSystem(f, {}, two, 40);
  for (std::size_t i = 1; i + 1 < r.residualHistory.size(); ++i)
    CHECK(r.residualHistory[i] >= 2 * r.residualHistory[i - 1]);
  CHECK(r.iterations <= 8);
}

TEST_CASE("solving DH problems") {
  DHProblem exp = problem("x1' - x1", "1, 1", "5");
  DHSolution s = solveDH(exp, 8);
  for (int i = 0; i < 8; ++i)
    CHECK(s.b.coefficient(i) == Series::constant(Rational(1) / Rational(factorial(i)), 1));
  CHECK(s.ballCheck);
  CHECK(checkDL(exp, s.b));

  DHProblem q = problem("x1'^2 - x1", "1, 1", "100");
  DHSolution t = solveDH(q, 4);
  CHECK(same(t.b, S("1 + t1 + (1/4)*t1^2 + O(t1^4)")));
  CHECK(checkDL(q, t.b));

  CHECK(codeOf([] { solveDH(problem("x1' - x1", "1, 2", "5"), 8); }) == ErrorCode::NotARoot);
  CHECK(codeOf([] { solveDH(problem("x1'' - x1", "1, 1, 1", "1"), 2); }) ==
        ErrorCode::InsufficientPrecision);
}

TEST_CASE("checkDL rejects non-solutions and too-small balls") {
  DHProblem exp = problem("x1' - x1", "1, 1", "()");
  CHECK_FALSE(checkDL(exp, S("1", 1)));

  DHProblem shifted{P("x1' - x1", 1), {S("1 + t0"), S("1 + t0")}, vv({0})};
  DHSolution s = solveDH(shifted, 10);
  CHECK(checkDL(shifted, s.b));
  ValueVec c = closeness(shifted, s.b);
  CHECK(c > vv({1000, 0}));
  // e^t0 is a root at the same stage, but v(e^t0 - (1 + t0)) = 2: γ = (2) is too large.
  Series e = S("1 + t0 + (1/2)*t0^2 + (1/6)*t0^3 + (1/24)*t0^4 + (1/120)*t0^5 + (1/720)*t0^6 + "
               "(1/5040)*t0^7 + (1/40320)*t0^8 + O(t0^9)");
  DHProblem wide{P("x1' - x1", 1), {S("1 + t0"), S("1 + t0")}, vv({1})};
  DHProblem tight{P("x1' - x1", 1), {S("1 + t0"), S("1 + t0")}, vv({2})};
  CHECK(checkDL(wide, e));
  CHECK_FALSE(checkDL(tight, e));
}

TEST_CASE("stage monotonicity on random problems") {
  Generator gen(99);
  for (int i = 0; i < 30; ++i) {
    DHProblem p = randomDHProblem(gen, i % 3);
    DHSolution s = solveDH(p, 8);
    CHECK(checkDL(p, s.b));
    ValueVec c = closeness(p, s.b);
    const std::size_t top = static_cast<std::size_t>(s.b.level());
    CHECK(c.coord(top - 1) > 0);
  }
}

TEST_CASE("points of presented algebras") {
  AlgebraPresentation e{{"x"}, {P("x1' - x1")}, std::map<std::string, std::vector<Series>>{
                                                     {"x", L("1, 1")}}};
  AlgebraPoint pe = solveAlgebraPoint(e, vv({5}), 6);
  CHECK(pe.relationsVanish);
  CHECK(pe.ballCheck);
  CHECK(same(pe.images.at("x"),
             S("1 + t1 + (1/2)*t1^2 + (1/6)*t1^3 + (1/24)*t1^4 + (1/120)*t1^5 + O(t1^6)")));

  AlgebraPresentation free{{"x"}, {}, std::map<std::string, std::vector<Series>>{{"x", L("3")}}};
  AlgebraPoint pf = solveAlgebraPoint(free, ValueVec(), 4);
  CHECK(same(pf.images.at("x"), S("3 + t0")));
  CHECK(pf.ballCheck);

  AlgebraPresentation sq{{"x"}, {P("x1'^2 - x1")},
                         std::map<std::string, std::vector<Series>>{{"x", L("1, 1")}}};
  AlgebraPoint ps = solveAlgebraPoint(sq, ValueVec(), 4);
  CHECK(same(ps.images.at("x"), S("(1 + t0/2)^2 + O(t0^4)")));

  // Two relations leading in x2: not triangular.
  AlgebraPresentation bad{{"x", "y"}, {P("x2 - x1", 0, 2), P("x2' - x1", 0, 2)},
                          std::map<std::string, std::vector<Series>>{{"x", L("1")},
                                                                     {"y", L("1, 1")}}};
  CHECK(codeOf([&] { solveAlgebraPoint(bad, ValueVec(), 4); }) ==
        ErrorCode::NonTriangularPresentation);
}

TEST_CASE("triangular system of two generators") {
  // y' = x·y with x free through 0: y = exp(t²/2)-like series.
  AlgebraPresentation a{{"x", "y"}, {P("x2' - x1*x2", 0, 2)},
                        std::map<std::string, std::vector<Series>>{{"x", L("0")},
                                                                   {"y", L("1, 0")}}};
  AlgebraPoint p = solveAlgebraPoint(a, ValueVec(), 6);
  CHECK(p.relationsVanish);
  CHECK(same(p.images.at("x"), S("t0")));
  CHECK(same(p.images.at("y"), S("1 + (1/2)*t0^2 + (1/8)*t0^4 + O(t0^6)")));
}

TEST_CASE("tower extension") {
  Tower t = towerExtend(towerExtend(Tower()));
  CHECK(t.height() == 2);
  CHECK(valuation(embed(S("t0"), 2)) == vv({1, 0}));
}
