#pragma once

#include "json.hpp"

#include "dhtk/diffpoly.hpp"
#include "dhtk/parse.hpp"
#include "dhtk/series.hpp"
#include "dhtk/solver.hpp"
#include "dhtk/value.hpp"
#include "dhtk/weil.hpp"

namespace dhtk {

using Json = nlohmann::ordered_json;

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
Json toJson(const Integer& z);
/// [num, den].
Json toJson(const Rational& q);
Rational rationalFromJson(const Json& j);

/// {level, ramification, precOrder, terms: [[expNum, expDen, coeff], ...]};
/// a level-0 element is [num, den].
Json toJson(const Series& s);
/// Accepts the structured form or an expression string.
Series seriesFromJson(const Json& j, const ParseOptions& options = {});

/// Coordinates as exact rationals, or "inf".
Json toJson(const ValueVec& v);
ValueVec valueVecFromJson(const Json& j);
Json toJson(const ValuationBound& b);

/// {text, numVars, level, terms: [{monomial: [[var, order, exp]...], coeff}]}.
Json toJson(const DiffPoly& f, const VariableNamer& namer = defaultVariableName);

/// Extension file: {dim, labels?, level?, structureConstants, derivationMatrix,
/// unitCoords?, basisValuations, realization?, separated?}. Entries are
/// expression strings or structured series.
FiniteFreeAlgebra extensionFromJson(const Json& j, const Tower& tower = {});
Json toJson(const FiniteFreeAlgebra& alg);

/// {generators, relations, basePoint?: {name: jet}}; generator names parse
/// as differential variables.
AlgebraPresentation algebraFromJson(const Json& j, const ParseOptions& options = {});
/// Same schema over L: relations may also use the extension's labels.
LPresentation lPresentationFromJson(const Json& j, const FiniteFreeAlgebra& alg,
                                    const Tower& tower = {});

}  // namespace dhtk
