#include "doctest.h"

#include "dhtk/checks.hpp"
#include "dhtk/json_io.hpp"
#include "dhtk/random.hpp"
#include "dhtk/weil.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

namespace {

LPresentation presentation(const std::string& json, const FiniteFreeAlgebra& alg) {
  return lPresentationFromJson(Json::parse(json), alg);
}

std::vector<DiffPoly> polys(const DescendedPresentation& d) {
  std::vector<DiffPoly> out;
  for (const auto& r : d.relations) out.push_back(r.poly);
  return out;
}

}  // namespace

TEST_CASE("shipped algebras satisfy the structure axioms") {
  CHECK(checkAxioms(FiniteFreeAlgebra::gaussian()).all());
  CHECK(checkAxioms(FiniteFreeAlgebra::sqrtT()).all());
  CHECK(checkAxioms(cubicExample()).all());
}

TEST_CASE("coordinates") {
  FiniteFreeAlgebra g = FiniteFreeAlgebra::gaussian();
  CHECK(coordinates(g, "3 + 4*i") == L("3, 4"));
  CHECK(coordinates(g.multiply(g.basisElement(1), g.basisElement(1))) == L("-1, 0"));
  CHECK(coordinates(g, "1") == g.unit);
  CHECK(coordinates(FiniteFreeAlgebra::sqrtT(), "t0 + s*t0") == std::vector<Series>{
                                                                  S("t0"), S("t0")});
}

TEST_CASE("classical descent over Q(i)") {
  FiniteFreeAlgebra g = FiniteFreeAlgebra::gaussian();
  DescendedPresentation d = descend(presentation(R"({"generators":["x"],"relations":["x^2 + 1"]})", g), g);
  CHECK(d.numVars() == 2);
  CHECK(polys(d) == std::vector<DiffPoly>{P("x1^2 - x2^2 + 1", 0, 2), P("2*x1*x2", 0, 2)});
  CHECK(toText(d.relations[1].poly, d.namer()) == "2*x(1)*x(2)");
  CHECK(d.relations[1].coordinate == 1);

  DescendedPresentation free = descend(presentation(R"({"generators":["x"]})", g), g);
  CHECK(free.relations.empty());
  CHECK(free.numVars() == 2);

  DescendedPresentation lin = descend(presentation(R"({"generators":["x"],"relations":["x - i"]})", g), g);
  CHECK(polys(lin) == std::vector<DiffPoly>{P("x1", 0, 2), P("x2 - 1", 0, 2)});
}

TEST_CASE("tau") {
  FiniteFreeAlgebra g = FiniteFreeAlgebra::gaussian();
  LPresentation B = presentation(R"({"generators":["x"],"relations":["x^2 + 1"]})", g);
  DescendedPresentation d = descend(B, g);
  LPoint i = tau(KPoint{{Series(0)}, {Series(1)}}, d, g);
  CHECK(i[0][0] == L("0, 1"));
  CHECK(g.isZero(evaluateInL(B.relations[0], i, g)));
  LPoint minusI = tau(KPoint{{Series(0)}, {Series(-1)}}, d, g);
  CHECK(minusI[0][0] == L("0, -1"));
  CHECK(tauInverse(i, B, g) == KPoint{{Series(0)}, {Series(1)}});
  CHECK(codeOf([&] { tau(KPoint{{Series(1)}, {Series(0)}}, d, g); }) ==
        ErrorCode::RelationViolated);
  CHECK(codeOf([&] { tauInverse(LPoint{{L("1, 1")}}, B, g); }) == ErrorCode::RelationViolated);

  LPresentation free = presentation(R"({"generators":["x","y"]})", g);
  DescendedPresentation fd = descend(free, g);
  KPoint k{{S("2")}, {S("-3")}, {S("1/2")}, {S("7")}};
  CHECK(tauInverse(tau(k, fd, g), free, g) == k);
}

TEST_CASE("descent derivation") {
  FiniteFreeAlgebra g = FiniteFreeAlgebra::gaussian();
  DescendedPresentation dg{{"x"}, 2, {}};
  for (int j = 0; j < 3; ++j) {
    CHECK(descentDerivationOf(dg, g, {1, j}) == DiffPoly::variable({1, j + 1}, 2));
  }
  FiniteFreeAlgebra r = FiniteFreeAlgebra::sqrtT();
  DescendedPresentation dr{{"x"}, 2, {}};
  CHECK(descentDerivationOf(dr, r, {1, 0}) == P("x2' - (1/2)*t0^(-1)*x2", 1, 2));
  CHECK(descentDerivationOf(dr, r, {1, 2}) == P("x2^(3) - (1/2)*t0^(-1)*x2''", 1, 2));
  CHECK(descentDerivationOf(dr, r, {0, 1}) == P("x1''", 1, 2));
  CHECK(verifyDescentDerivation(dr, r, 4));
  CHECK(verifyDescentDerivation(dg, g, 4));
  // p = x'·x - s·x over L[x].
  CHECK(verifyDescentDerivationOn(P("x1'*x1 - x3*x1", 1, 3), 1, r));
}

TEST_CASE("continuity bound hand cases") {
  FiniteFreeAlgebra r = FiniteFreeAlgebra::sqrtT();
  ContinuityWitness w = continuityBound(r, {S("1", 1), S("1", 1)},
                                        {S("1 + t0^4"), S("1 + t0^4")}, vv({3}));
  CHECK(w.epsilon == vv({0}));
  CHECK(w.hypothesis);
  CHECK(w.conclusion);
  CHECK(w.difference == vv({4}));
  ContinuityWitness same = continuityBound(r, {S("t0"), S("2", 1)}, {S("t0"), S("2", 1)}, vv({9}));
  CHECK(same.difference.isInfinity());
  CHECK(same.conclusion);
}

TEST_CASE("separated lower bound hand cases") {
  FiniteFreeAlgebra r = FiniteFreeAlgebra::sqrtT();
  SeparatedBoundReport s = separatedLowerBound(r, {S("t0^2"), S("t0^2")},
                                               {S("0", 1), S("0", 1)});
  CHECK(s.difference == vv({2}));
  CHECK(s.all());
  CHECK(separatedLowerBound(r, {S("t0"), S("1", 1)}, {S("t0"), S("1", 1)}).all());

  FiniteFreeAlgebra undeclared = r;
  undeclared.basis.realization.reset();
  undeclared.basis.declaredSeparated = false;
  CHECK(codeOf([&] { separatedLowerBound(undeclared, {S("t0"), S("t0")}, r.zero()); }) ==
        ErrorCode::BasisNotDeclaredSeparated);
}

TEST_CASE("sampled separatedness") {
  FiniteFreeAlgebra r = FiniteFreeAlgebra::sqrtT();
  Generator gen(17);
  std::vector<LElement> samples;
  for (int i = 0; i < 200; ++i) samples.push_back({gen.series(1, 3, 5, 1, -2, 5),
                                                   gen.series(1, 3, 5, 1, -2, 5)});
  CHECK(isSeparatedSample(r.basis, samples));
  CHECK_FALSE(isSeparatedSample(nonSeparatedExample(), {{Series(1), Series(-1)}}));
  ValuedBasis single{1, {vv({0})}, std::vector<Series>{S("1", 1)}, false};
  CHECK(isSeparatedSample(single, {{S("t0 + 3")}, {S("t0^(-2)")}}));
}

TEST_CASE("L-valuation") {
  FiniteFreeAlgebra r = FiniteFreeAlgebra::sqrtT();
  CHECK(r.basis.valuation({S("t0"), S("1", 1)}) == ValueVec({makeRational(1, 2)}));
  CHECK(r.basis.valuation(r.zero()).isInfinity());
  CHECK(FiniteFreeAlgebra::gaussian().basis.valuation(L("3, 4")) == ValueVec());
}
