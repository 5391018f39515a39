#include "dhtk/json_io.hpp"

#include <cctype>
#include <limits>

#include "dhtk/error.hpp"

namespace dhtk {

namespace {

long ramificationOf(const Series& s) {
  Integer d = 1;
  for (const auto& t : s.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.exponent.get_den_mpz_t());
  if (s.precOrder()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), s.precOrder()->get_den_mpz_t());
  return d.fits_slong_p() ? d.get_si() : 0;
}

Integer integerFromJson(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::InvalidInput, "bad integer");
    return z;
  }
  throw Error(ErrorCode::InvalidInput, "expected an integer");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorCode::InvalidInput, std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string expressionText(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorCode::InvalidInput, "expected an expression string");
}

std::vector<Series> jetFromJson(const Json& j, const ParseOptions& options) {
  if (j.is_string()) return parseSeriesList(j.get<std::string>(), options);
  if (j.is_array()) {
    std::vector<Series> out;
    for (const auto& e : j) out.push_back(seriesFromJson(e, options));
    return out;
  }
  return {seriesFromJson(j, options)};
}

}  // namespace

Json toJson(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

Json toJson(const Rational& q) { return Json::array({toJson(q.get_num()), toJson(q.get_den())}); }

Rational rationalFromJson(const Json& j) {
  if (j.is_array() && j.size() == 2) return makeRational(integerFromJson(j[0]), integerFromJson(j[1]));
  if (j.is_number_integer()) return Rational(integerFromJson(j));
  if (j.is_string()) return parseRational(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, "expected a rational");
}

Json toJson(const Series& s) {
  if (s.level() == 0) return toJson(s.scalar());
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    terms.push_back(Json::array({toJson(t.exponent.get_num()), toJson(t.exponent.get_den()),
                                 toJson(t.coeff)}));
  }
  Json out;
  out["level"] = s.level();
  out["ramification"] = ramificationOf(s);
  out["precOrder"] = s.precOrder() ? toJson(*s.precOrder()) : Json(nullptr);
  out["terms"] = std::move(terms);
  return out;
}

Series seriesFromJson(const Json& j, const ParseOptions& options) {
  if (j.is_string()) {
    Series s = parseSeries(j.get<std::string>(), options);
    return options.minLevel > s.level() ? embed(s, options.minLevel) : s;
  }
  if (j.is_array() || j.is_number_integer()) {
    Series s(rationalFromJson(j));
    return options.minLevel > 0 ? embed(s, options.minLevel) : s;
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "expected a series");
  const int level = field(j, "level").get<int>();
  if (level < 1) throw Error(ErrorCode::InvalidInput, "structured series need level >= 1");
  std::optional<Rational> prec;
  if (j.contains("precOrder") && !j.at("precOrder").is_null())
    prec = rationalFromJson(j.at("precOrder"));
  ParseOptions inner = options;
  inner.minLevel = 0;
  std::vector<Series::Term> terms;
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::InvalidInput, "bad series term");
    Rational e = makeRational(integerFromJson(t[0]), integerFromJson(t[1]));
    Series c = seriesFromJson(t[2], inner);
    if (c.level() > level - 1) throw Error(ErrorCode::LevelMismatch, "coefficient level too high");
    terms.push_back({e, embed(c, level - 1)});
  }
  Series s = Series::fromTerms(level, std::move(terms), prec);
  return options.minLevel > level ? embed(s, options.minLevel) : s;
}

Json toJson(const ValueVec& v) {
  if (v.isInfinity()) return "inf";
  Json out = Json::array();
  for (const auto& c : v.coords()) out.push_back(toString(c));
  return out;
}

ValueVec valueVecFromJson(const Json& j) {
  if (j.is_string()) return parseValueVec(j.get<std::string>());
  if (j.is_number_integer()) return ValueVec({Rational(integerFromJson(j))});
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a value vector");
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rationalFromJson(c));
  return ValueVec(std::move(coords));
}

Json toJson(const ValuationBound& b) {
  Json out;
  out["text"] = b.toString();
  out["exact"] = b.exact;
  out["floor"] = toJson(b.floor);
  out["unboundedBelow"] = b.unboundedBelow;
  return out;
}

Json toJson(const DiffPoly& f, const VariableNamer& namer) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : f.terms()) {
    Json m = Json::array();
    for (const auto& [key, e] : mono.factors()) m.push_back(Json::array({key.var, key.order, e}));
    terms.push_back(Json{{"monomial", m}, {"coeff", toJson(coeff)}});
  }
  Json out;
  out["text"] = toText(f, namer);
  out["numVars"] = f.numVars();
  out["level"] = f.level();
  out["terms"] = std::move(terms);
  return out;
}

FiniteFreeAlgebra extensionFromJson(const Json& j, const Tower& tower) {
  FiniteFreeAlgebra alg;
  const int dim = field(j, "dim").get<int>();
  if (dim < 1) throw Error(ErrorCode::InvalidInput, "dim must be positive");
  const auto l = static_cast<std::size_t>(dim);
  if (j.contains("labels")) {
    alg.labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (int i = 0; i < dim; ++i) alg.labels.push_back("b" + std::to_string(i + 1));
  }
  if (alg.labels.size() != l) throw Error(ErrorCode::InvalidInput, "label count differs from dim");

  ParseOptions options;
  options.tower = tower;
  options.minLevel = j.value("level", 0);
  auto entry = [&](const Json& e) { return seriesFromJson(e, options); };

  const Json& c = field(j, "structureConstants");
  const Json& d = field(j, "derivationMatrix");
  if (c.size() != l || d.size() != l) throw Error(ErrorCode::InvalidInput, "matrix size differs from dim");
  int level = options.minLevel;
  alg.structure.assign(l, std::vector<std::vector<Series>>(l));
  alg.derivation.assign(l, {});
  for (std::size_t a = 0; a < l; ++a) {
    if (c[a].size() != l || d[a].size() != l)
      throw Error(ErrorCode::InvalidInput, "matrix size differs from dim");
    for (std::size_t b = 0; b < l; ++b) {
      if (c[a][b].size() != l) throw Error(ErrorCode::InvalidInput, "structure constant arity");
      for (std::size_t m = 0; m < l; ++m) {
        alg.structure[a][b].push_back(entry(c[a][b][m]));
        level = std::max(level, alg.structure[a][b].back().level());
      }
      alg.derivation[a].push_back(entry(d[a][b]));
      level = std::max(level, alg.derivation[a].back().level());
    }
  }
  if (j.contains("unitCoords")) {
    for (const auto& u : j.at("unitCoords")) alg.unit.push_back(entry(u));
  } else {
    for (std::size_t i = 0; i < l; ++i) alg.unit.push_back(Series(i == 0 ? 1 : 0));
  }
  if (alg.unit.size() != l) throw Error(ErrorCode::InvalidInput, "unitCoords size differs from dim");
  for (const auto& u : alg.unit) level = std::max(level, u.level());

  auto lift = [&](Series& s) { s = embed(s, level); };
  for (auto& row : alg.structure)
    for (auto& v : row)
      for (auto& s : v) lift(s);
  for (auto& row : alg.derivation)
    for (auto& s : row) lift(s);
  for (auto& s : alg.unit) lift(s);

  alg.basis.level = level;
  for (const auto& v : field(j, "basisValuations")) alg.basis.valuations.push_back(valueVecFromJson(v));
  if (alg.basis.valuations.size() != l)
    throw Error(ErrorCode::InvalidInput, "basisValuations size differs from dim");
  if (j.contains("realization")) {
    ParseOptions r = options;
    r.minLevel = level;
    std::vector<Series> real;
    for (const auto& e : j.at("realization")) real.push_back(seriesFromJson(e, r));
    if (real.size() != l) throw Error(ErrorCode::InvalidInput, "realization size differs from dim");
    alg.basis.realization = std::move(real);
  }
  alg.basis.declaredSeparated = j.value("separated", false);
  return alg;
}

Json toJson(const FiniteFreeAlgebra& alg) {
  Json c = Json::array(), d = Json::array(), u = Json::array(), w = Json::array();
  for (const auto& row : alg.structure) {
    Json r = Json::array();
    for (const auto& v : row) {
      Json e = Json::array();
      for (const auto& s : v) e.push_back(toText(s));
      r.push_back(e);
    }
    c.push_back(r);
  }
  for (const auto& row : alg.derivation) {
    Json r = Json::array();
    for (const auto& s : row) r.push_back(toText(s));
    d.push_back(r);
  }
  for (const auto& s : alg.unit) u.push_back(toText(s));
  for (const auto& v : alg.basis.valuations) w.push_back(v.toString());
  Json out;
  out["dim"] = alg.dim();
  out["labels"] = alg.labels;
  out["level"] = alg.level();
  out["structureConstants"] = c;
  out["derivationMatrix"] = d;
  out["unitCoords"] = u;
  out["basisValuations"] = w;
  if (alg.basis.realization) {
    Json r = Json::array();
    for (const auto& s : *alg.basis.realization) r.push_back(toText(s));
    out["realization"] = r;
  }
  out["separated"] = alg.basis.declaredSeparated;
  return out;
}

AlgebraPresentation algebraFromJson(const Json& j, const ParseOptions& options) {
  AlgebraPresentation a;
  a.generators = field(j, "generators").get<std::vector<std::string>>();
  ParseOptions p = options;
  p.numVars = static_cast<int>(a.generators.size());
  for (std::size_t i = 0; i < a.generators.size(); ++i) p.symbols[a.generators[i]] = static_cast<int>(i);
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) a.relations.push_back(parseDiffPoly(expressionText(r), p));
  }
  if (j.contains("basePoint")) {
    std::map<std::string, std::vector<Series>> base;
    for (const auto& [name, jet] : j.at("basePoint").items()) base[name] = jetFromJson(jet, options);
    a.basePoint = std::move(base);
  }
  return a;
}

LPresentation lPresentationFromJson(const Json& j, const FiniteFreeAlgebra& alg,
                                    const Tower& tower) {
  LPresentation B;
  B.generators = field(j, "generators").get<std::vector<std::string>>();
  const int g = static_cast<int>(B.generators.size());
  ParseOptions p;
  p.tower = tower;
  p.minLevel = alg.level();
  p.numVars = g + alg.dim();
  for (int i = 0; i < g; ++i) p.symbols[B.generators[static_cast<std::size_t>(i)]] = i;
  for (int i = 0; i < alg.dim(); ++i) {
    const auto& label = alg.labels[static_cast<std::size_t>(i)];
    if (!label.empty() && !std::isdigit(static_cast<unsigned char>(label[0]))) p.symbols[label] = g + i;
  }
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      DiffPoly f = parseDiffPoly(expressionText(r), p);
      if (f.level() > alg.level())
        throw Error(ErrorCode::LevelMismatch, "relation coefficients are not in K");
      B.relations.push_back(f.liftedTo(alg.level()));
    }
  }
  return B;
}

}  // namespace dhtk
