#include "doctest.h"

#include "dhtk/checks.hpp"
#include "dhtk/json_io.hpp"
#include "dhtk/random.hpp"
#include "helpers.hpp"

using namespace dhtk;
using namespace dhtk::test;

TEST_CASE("series documents") {
  Json j = toJson(S("t0^(1/2) - 3 + O(t0^2)"));
  CHECK(j["level"] == 1);
  CHECK(j["precOrder"] == Json::array({2, 1}));
  CHECK(j["terms"][0] == Json::array({0, 1, Json::array({-3, 1})}));
  CHECK(toJson(makeRational(-1, 2)) == Json::array({-1, 2}));
  Generator gen(1);
  for (int i = 0; i < 50; ++i) {
    Series s = gen.series(static_cast<int>(gen.integer(0, 3)), 4, 9, 3, -2, 5);
    if (s.level() > 0 && gen.coin()) s = s + Series::bigO(6, s.level());
    CHECK(seriesFromJson(toJson(s)) == s);
  }
  CHECK(seriesFromJson(Json("1 + t0")) == S("1 + t0"));
}

TEST_CASE("value documents") {
  CHECK(toJson(vv({1, -1})) == Json::array({"1", "-1"}));
  CHECK(valueVecFromJson(toJson(ValueVec({makeRational(1, 2)}))) == ValueVec({makeRational(1, 2)}));
  CHECK(valueVecFromJson(toJson(ValueVec::infinity())).isInfinity());
  Json b = toJson(valuationBound(S("O(t0^3)")));
  CHECK(b["exact"] == false);
}

TEST_CASE("extension documents") {
  for (const auto& alg : {FiniteFreeAlgebra::gaussian(), FiniteFreeAlgebra::sqrtT(),
                          cubicExample()}) {
    FiniteFreeAlgebra back = extensionFromJson(toJson(alg));
    CHECK(back.labels == alg.labels);
    CHECK(back.structure == alg.structure);
    CHECK(back.derivation == alg.derivation);
    CHECK(back.unit == alg.unit);
    CHECK(back.basis.valuations == alg.basis.valuations);
  }
  Json minimal = Json::parse(R"({
    "dim": 2,
    "structureConstants": [[["1","0"],["0","1"]],[["0","1"],["2","0"]]],
    "derivationMatrix": [["0","0"],["0","0"]],
    "basisValuations": [[], []]
  })");
  FiniteFreeAlgebra r2 = extensionFromJson(minimal);
  CHECK(r2.dim() == 2);
  CHECK(checkAxioms(r2).all());
  CHECK(r2.multiply(r2.basisElement(1), r2.basisElement(1)) == L("2, 0"));
  CHECK(codeOf([] { extensionFromJson(Json::parse(R"({"dim": 2})")); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("algebra documents") {
  AlgebraPresentation a = algebraFromJson(Json::parse(
      R"({"generators":["x"],"relations":["x' - x"],"basePoint":{"x":["1","1"]}})"));
  CHECK(a.relations[0] == P("x1' - x1"));
  CHECK(a.basePoint->at("x") == L("1, 1"));
  AlgebraPresentation b = algebraFromJson(Json::parse(
      R"({"generators":["u","v"],"relations":["v'' - u*v"],"basePoint":{"u":"0","v":"1, 0, 0"}})"));
  CHECK(b.relations[0] == P("x2'' - x1*x2", 0, 2));
  CHECK(b.basePoint->at("v").size() == 3);
}

TEST_CASE("differential polynomial documents") {
  Json j = toJson(P("x1'^2 - x1"));
  CHECK(j["text"] == "x1'^2 - x1");
  CHECK(j["numVars"] == 1);
  CHECK(j["terms"].size() == 2);
}
