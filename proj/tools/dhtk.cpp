#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dhtk/checks.hpp"
#include "dhtk/error.hpp"
#include "dhtk/json_io.hpp"
#include "dhtk/parse.hpp"
#include "dhtk/solver.hpp"
#include "dhtk/taylor.hpp"
#include "dhtk/weil.hpp"

using namespace dhtk;

namespace {

constexpr const char* kGrammar = R"txt(Expression grammar (whitespace is ignored):
  expr     := term (('+' | '-') term)*
  term     := unary (('*' | '/') unary)*
  unary    := ('+' | '-') unary | power
  power    := atom ('^' exponent)*
  atom     := integer | '(' expr ')' | xvar | t<k> | O(t<k>^e)
  xvar     := x<i> followed by apostrophes or ^(k) for the k-th derivative
  exponent := integer | '(' ['-'] integer ['/' integer] ')'
x1^(3) is the third derivative of x1; (x1)^3 is a power. t0, t1, ... are the
series variables of the tower, O(t0^5) is a precision marker. Division is
allowed by x-free expressions; fractional exponents by unit monomials.
Value vectors: "5", "1,-1", "(1/2, 3)", "()".)txt";

struct RunConfig {
  std::vector<long> precision;
  std::vector<long> ramification;
  std::uint64_t seed = 42;
  int trials = 100;
  std::string format = "pretty";

  Tower tower(std::size_t minHeight = 4) const {
    std::size_t h = std::max({minHeight, precision.size(), ramification.size()});
    std::vector<LevelConfig> levels(h);
    for (std::size_t i = 0; i < h; ++i) {
      if (!precision.empty()) levels[i].terms = precision[std::min(i, precision.size() - 1)];
      if (!ramification.empty())
        levels[i].ramification = ramification[std::min(i, ramification.size() - 1)];
    }
    return Tower(levels);
  }
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parseJsonText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, what + " is not valid JSON: " + e.what());
  }
}

std::vector<long> longList(const Json& j) {
  if (j.is_number_integer()) return {j.get<long>()};
  return j.get<std::vector<long>>();
}

void applyConfigFile(const std::string& path, RunConfig& cfg) {
  Json j = parseJsonText(readFile(path), "config file");
  if (j.contains("precision")) cfg.precision = longList(j["precision"]);
  if (j.contains("ramification")) cfg.ramification = longList(j["ramification"]);
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
}

FiniteFreeAlgebra loadExtension(const std::string& name, const Tower& tower) {
  if (name == "gaussian") return FiniteFreeAlgebra::gaussian();
  if (name == "sqrt-t") return FiniteFreeAlgebra::sqrtT();
  if (name == "cubic") return cubicExample();
  return extensionFromJson(parseJsonText(readFile(name), "extension file"), tower);
}

Json jsonOrFile(const std::string& arg, const std::string& what) {
  std::string trimmed = arg;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\n"));
  if (!trimmed.empty() && (trimmed[0] == '{' || trimmed[0] == '['))
    return parseJsonText(trimmed, what);
  return parseJsonText(readFile(arg), what);
}

Json seriesListJson(const std::vector<Series>& xs) {
  Json out = Json::array();
  for (const auto& s : xs) out.push_back(toText(s));
  return out;
}

Json coefficientTexts(const Series& s) {
  Json out = Json::array();
  for (const auto& t : s.terms()) out.push_back(Json::array({toString(t.exponent), toText(t.coeff)}));
  return out;
}

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string expr;
  bool series = false;
};

Json runParse(const ParseArgs& a, const RunConfig& cfg) {
  ParseOptions options;
  options.tower = cfg.tower();
  Json out;
  out["input"] = a.expr;
  if (a.series) {
    Series s = parseSeries(a.expr, options);
    out["normalForm"] = toText(s);
    out["series"] = toJson(s);
  } else {
    DiffPoly f = parseDiffPoly(a.expr, options);
    out["normalForm"] = toText(f);
    out["poly"] = toJson(f);
  }
  return out;
}

struct TaylorArgs {
  std::string poly, jet;
  int terms = 8;
};

Json runTaylor(const TaylorArgs& a, const RunConfig& cfg) {
  ParseOptions options;
  options.tower = cfg.tower();
  options.numVars = 1;
  DiffPoly f = parseDiffPoly(a.poly, options);
  std::vector<Series> jet = parseSeriesList(a.jet, options);
  ProlongedPoint point = prolong(f, jet, std::max(a.terms - 1, order(f, 0)), options.tower);
  Series alpha = twistedTaylor(point, a.terms);
  Json out;
  out["poly"] = toText(f);
  out["order"] = point.order;
  out["prolongedValues"] = seriesListJson(point.values);
  out["taylor"] = toText(alpha);
  out["coefficients"] = coefficientTexts(alpha);
  out["series"] = toJson(alpha);
  out["valuedTaylor"] = checkValuedTaylor(point, alpha);
  return out;
}

struct SolveArgs {
  std::string poly, jet, gamma;
  int terms = 8;
  bool autoDouble = false;
};

Json solveOnce(const SolveArgs& a, const Tower& tower) {
  ParseOptions options;
  options.tower = tower;
  options.numVars = 1;
  DHProblem p{parseDiffPoly(a.poly, options), parseSeriesList(a.jet, options),
              parseValueVec(a.gamma)};
  DHSolution sol = solveDH(p, a.terms, tower);
  Json out;
  out["problem"] = Json{{"poly", toText(p.f)},
                        {"jet", seriesListJson(p.jet)},
                        {"gamma", toJson(p.gamma)},
                        {"baseLevel", p.level()}};
  out["terms"] = sol.terms;
  out["solutionText"] = toText(sol.b);
  out["coefficients"] = coefficientTexts(sol.b);
  out["solution"] = toJson(sol.b);
  out["residualValuation"] = toJson(sol.residual);
  out["ballCheck"] = sol.ballCheck;
  out["checkDL"] = checkDL(p, sol.b);
  out["closeness"] = toJson(closeness(p, sol.b));
  return out;
}

Json runSolveDH(const SolveArgs& a, const RunConfig& cfg) {
  Tower tower = cfg.tower();
  try {
    return solveOnce(a, tower);
  } catch (const Error& e) {
    bool retry = a.autoDouble && (e.code() == ErrorCode::DegeneratePoint ||
                                  e.code() == ErrorCode::InsufficientPrecision);
    if (!retry) throw;
  }
  std::vector<LevelConfig> doubled = tower.levels();
  for (auto& l : doubled) l.terms *= 2;
  Json out = solveOnce(a, Tower(doubled));
  out["precisionDoubled"] = true;
  return out;
}

struct HenselArgs {
  std::string system, fixed, approx;
  std::string target = "8";
};

std::vector<std::string> splitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Json runHensel(const HenselArgs& a, const RunConfig& cfg) {
  ParseOptions options;
  options.tower = cfg.tower();
  std::vector<Series> fixed = a.fixed.empty() ? std::vector<Series>{} : parseSeriesList(a.fixed, options);
  std::vector<Series> approx = parseSeriesList(a.approx, options);
  options.numVars = static_cast<int>(fixed.size() + approx.size());
  std::vector<DiffPoly> system;
  for (const auto& part : splitOn(a.system, ';')) system.push_back(parseDiffPoly(part, options));
  HenselResult r = henselLiftSystem(system, fixed, approx, parseRational(a.target), options.tower);
  Json history = Json::array();
  for (const auto& v : r.residualHistory) history.push_back(toString(v));
  Json out;
  out["roots"] = seriesListJson(r.roots);
  Json structured = Json::array();
  for (const auto& s : r.roots) structured.push_back(toJson(s));
  out["solution"] = structured;
  out["iterations"] = r.iterations;
  out["jacobianValuation"] = toString(r.jacobianValuation);
  out["residualHistory"] = history;
  out["residualValuation"] = toJson(r.residual);
  return out;
}

struct AlgebraArgs {
  std::string file, gamma;
  int terms = 0;
};

Json runSolveAlgebra(const AlgebraArgs& a, const RunConfig& cfg) {
  Json doc = parseJsonText(readFile(a.file), "algebra file");
  ParseOptions options;
  options.tower = cfg.tower();
  AlgebraPresentation alg = algebraFromJson(doc, options);
  ValueVec gamma = !a.gamma.empty() ? parseValueVec(a.gamma)
                   : doc.contains("gamma") ? valueVecFromJson(doc["gamma"])
                                            : ValueVec();
  int terms = a.terms > 0 ? a.terms : doc.value("terms", 8);
  AlgebraPoint point = solveAlgebraPoint(alg, gamma, terms, options.tower);
  Json images;
  Json structured;
  for (const auto& [name, s] : point.images) {
    images[name] = toText(s);
    structured[name] = toJson(s);
  }
  Json out;
  out["generators"] = alg.generators;
  out["gamma"] = toJson(gamma);
  out["solutionText"] = images;
  out["solution"] = structured;
  out["relationsVanish"] = point.relationsVanish;
  out["ballCheck"] = point.ballCheck;
  return out;
}

struct WeilArgs {
  std::string algebra, extension = "gaussian", point, phi, psi, gamma = "0";
  bool inverse = false;
  int derivationOrders = 2;
};

Json runWeilDescend(const WeilArgs& a, const RunConfig& cfg) {
  Tower tower = cfg.tower();
  FiniteFreeAlgebra alg = loadExtension(a.extension, tower);
  LPresentation B = lPresentationFromJson(jsonOrFile(a.algebra, "algebra"), alg, tower);
  DescendedPresentation desc = descend(B, alg);
  Json gens = Json::array();
  for (int v = 0; v < desc.numVars(); ++v) gens.push_back(desc.name(v));
  Json rels = Json::array();
  for (const auto& r : desc.relations) {
    rels.push_back(Json{{"text", toText(r.poly, desc.namer())},
                        {"relation", r.relation},
                        {"coordinate", r.coordinate + 1}});
  }
  Json deriv;
  for (int v = 0; v < desc.numVars(); ++v) {
    for (int j = 0; j < a.derivationOrders; ++j) {
      std::string name = desc.name(v) + std::string(static_cast<std::size_t>(j), '\'');
      deriv[name] = toText(descentDerivationOf(desc, alg, VarKey{v, j}), desc.namer());
    }
  }
  auto axioms = checkAxioms(alg);
  Json out;
  out["extension"] = toJson(alg);
  out["axioms"] = Json{{"associative", axioms.associative},
                       {"commutative", axioms.commutative},
                       {"unital", axioms.unital},
                       {"leibniz", axioms.leibniz}};
  out["generators"] = gens;
  out["relations"] = rels;
  out["descentDerivation"] = deriv;
  out["descentDerivationVerified"] = verifyDescentDerivation(desc, alg, a.derivationOrders);
  return out;
}

std::vector<Series> jetValues(const Json& j, const ParseOptions& options) {
  std::vector<Series> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(seriesFromJson(e, options));
  } else {
    out.push_back(seriesFromJson(j, options));
  }
  return out;
}

Json runWeilTau(const WeilArgs& a, const RunConfig& cfg) {
  Tower tower = cfg.tower();
  FiniteFreeAlgebra alg = loadExtension(a.extension, tower);
  LPresentation B = lPresentationFromJson(jsonOrFile(a.algebra, "algebra"), alg, tower);
  DescendedPresentation desc = descend(B, alg);
  Json pointJson = jsonOrFile(a.point, "point");
  ParseOptions options;
  options.tower = tower;
  options.minLevel = alg.level();
  const auto l = static_cast<std::size_t>(alg.dim());
  Json out;
  if (!a.inverse) {
    KPoint k(static_cast<std::size_t>(desc.numVars()));
    for (int v = 0; v < desc.numVars(); ++v) {
      std::string name = desc.name(v);
      if (!pointJson.contains(name)) throw Error(ErrorCode::InvalidInput, "point misses " + name);
      k[static_cast<std::size_t>(v)] = jetValues(pointJson[name], options);
    }
    LPoint phi = tau(k, desc, alg);
    for (std::size_t g = 0; g < phi.size(); ++g) {
      Json jets = Json::array();
      for (const auto& x : phi[g]) jets.push_back(seriesListJson(x));
      out[B.generators[g]] = jets;
    }
  } else {
    LPoint phi(B.generators.size());
    for (std::size_t g = 0; g < B.generators.size(); ++g) {
      const auto& name = B.generators[g];
      if (!pointJson.contains(name)) throw Error(ErrorCode::InvalidInput, "point misses " + name);
      const Json& v = pointJson[name];
      // Either one coordinate list or a jet of coordinate lists.
      std::vector<Json> jets;
      if (v.is_array() && !v.empty() && v[0].is_array() && v[0].size() == l && !v[0][0].is_number()) {
        for (const auto& e : v) jets.push_back(e);
      } else {
        jets.push_back(v);
      }
      for (const auto& e : jets) {
        LElement x;
        if (e.is_string()) {
          x = coordinates(alg, e.get<std::string>());
        } else {
          for (const auto& c : e) x.push_back(seriesFromJson(c, options));
        }
        if (x.size() != l) throw Error(ErrorCode::InvalidInput, "coordinate count differs from dim");
        phi[g].push_back(std::move(x));
      }
    }
    KPoint k = tauInverse(phi, B, alg);
    for (int v = 0; v < desc.numVars(); ++v) out[desc.name(v)] = seriesListJson(k[static_cast<std::size_t>(v)]);
  }
  return Json{{"direction", a.inverse ? "tauInverse" : "tau"}, {"point", out}};
}

Json runWeilBounds(const WeilArgs& a, const RunConfig& cfg) {
  Tower tower = cfg.tower();
  FiniteFreeAlgebra alg = loadExtension(a.extension, tower);
  ParseOptions options;
  options.tower = tower;
  options.minLevel = alg.level();
  LElement phi = parseSeriesList(a.phi, options);
  LElement psi = parseSeriesList(a.psi, options);
  if (static_cast<int>(phi.size()) != alg.dim() || static_cast<int>(psi.size()) != alg.dim())
    throw Error(ErrorCode::InvalidInput, "coordinate count differs from dim");
  for (auto& s : phi) s = embed(s, alg.level());
  for (auto& s : psi) s = embed(s, alg.level());
  ValueVec gamma = parseValueVec(a.gamma);
  ContinuityWitness w = continuityBound(alg, phi, psi, gamma);
  Json coords = Json::array();
  for (const auto& v : w.coordinateValuations) coords.push_back(toJson(v));
  Json out;
  out["epsilon"] = toJson(w.epsilon);
  out["continuity"] = Json{{"coordinateValuations", coords},
                           {"threshold", toJson(gamma - w.epsilon)},
                           {"hypothesis", w.hypothesis},
                           {"difference", toJson(w.difference)},
                           {"conclusion", w.conclusion}};
  if (alg.basis.declaredSeparated) {
    SeparatedBoundReport r = separatedLowerBound(alg, phi, psi);
    Json holds = Json::array();
    for (bool b : r.holds) holds.push_back(b);
    out["separatedLowerBound"] = Json{{"holds", holds}, {"all", r.all()}};
  } else {
    out["separatedLowerBound"] = nullptr;
  }
  if (alg.basis.realization || alg.level() == 0)
    out["separatedSample"] = isSeparatedSample(alg.basis, {phi, psi, alg.sub(phi, psi)});
  return out;
}

struct CheckArgs {
  std::string suite = "all";
};

Json runCheck(const CheckArgs& a, const RunConfig& cfg, bool& allPassed) {
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = suiteNames();
  } else {
    names.push_back(a.suite);
  }
  Json suites = Json::array();
  allPassed = true;
  for (const auto& n : names) {
    SuiteResult r = runSuite(n, cfg.seed, cfg.trials);
    allPassed = allPassed && r.passed();
    suites.push_back(Json{{"suite", r.name},
                          {"trials", r.trials},
                          {"failures", r.failures},
                          {"passed", r.passed()},
                          {"notes", r.notes}});
  }
  return Json{{"seed", cfg.seed}, {"trialsPerSuite", cfg.trials}, {"suites", suites},
              {"passed", allPassed}};
}

void emit(const Json& doc, const RunConfig& cfg) {
  std::cout << (cfg.format == "json" ? doc.dump() : doc.dump(2)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dhtk: exact computations in towers of iterated Laurent/Puiseux series"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();

  std::string configPath;
  std::vector<long> precision, ramification;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string format;
  app.add_option("--config", configPath, "JSON config file {precision, ramification, seed, trials, format}");
  app.add_option("--precision", precision, "Truncation terms per tower level (last value repeats)");
  app.add_option("--ramification", ramification, "Ramification per tower level (last value repeats)");
  app.add_option("--seed", seed, "Random seed for property suites");
  app.add_option("--trials", trials, "Trials per property suite");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  ParseArgs parseArgs;
  auto* parseCmd = app.add_subcommand("parse", "Parse and print the normal form of an expression");
  parseCmd->add_option("expr", parseArgs.expr, "Differential polynomial or series")->required();
  parseCmd->add_flag("--series", parseArgs.series, "Parse as a series without x variables");

  TaylorArgs taylorArgs;
  auto* taylorCmd = app.add_subcommand("taylor", "Twisted Taylor series of an algebraic root");
  taylorCmd->add_option("--poly", taylorArgs.poly, "Polynomial in x1")->required();
  taylorCmd->add_option("--jet", taylorArgs.jet, "Comma-separated jet c0,...,cn")->required();
  taylorCmd->add_option("--terms", taylorArgs.terms, "Number of Taylor coefficients");

  SolveArgs solveArgs;
  auto* solveCmd = app.add_subcommand("solve-dh", "Solve a differentially henselian problem");
  solveCmd->add_option("--poly", solveArgs.poly, "Polynomial in x1")->required();
  solveCmd->add_option("--jet", solveArgs.jet, "Comma-separated jet c0,...,cn")->required();
  solveCmd->add_option("--gamma", solveArgs.gamma, "Ball radius; its length fixes the base level")->required();
  solveCmd->add_option("--terms", solveArgs.terms, "Number of solution terms");
  solveCmd->add_flag("--auto-double", solveArgs.autoDouble,
                     "Retry once with doubled truncation on a degenerate separant");

  HenselArgs henselArgs;
  auto* henselCmd = app.add_subcommand("hensel", "Newton lifting of a polynomial system");
  henselCmd->add_option("--system", henselArgs.system, "Polynomials separated by ';'")->required();
  henselCmd->add_option("--approx", henselArgs.approx, "Approximate roots of the lifted variables")->required();
  henselCmd->add_option("--fixed", henselArgs.fixed, "Values of the leading fixed variables");
  henselCmd->add_option("--target", henselArgs.target, "Target residual precision");

  AlgebraArgs algebraArgs;
  auto* algebraCmd = app.add_subcommand("solve-algebra", "Differential point of a presented algebra");
  algebraCmd->add_option("--spec", algebraArgs.file, "JSON {generators, relations, basePoint, gamma, terms}")->required();
  algebraCmd->add_option("--gamma", algebraArgs.gamma, "Ball radius override");
  algebraCmd->add_option("--terms", algebraArgs.terms, "Terms override");

  WeilArgs weilArgs;
  auto addExtension = [&](CLI::App* cmd) {
    cmd->add_option("--extension", weilArgs.extension,
                    "Extension file, or gaussian | sqrt-t | cubic");
  };
  auto* descendCmd = app.add_subcommand("weil-descend", "Weil descent of an algebra over L");
  descendCmd->add_option("--algebra", weilArgs.algebra, "JSON {generators, relations} or file")->required();
  descendCmd->add_option("--orders", weilArgs.derivationOrders, "Jet orders shown for the descent derivation");
  addExtension(descendCmd);
  auto* tauCmd = app.add_subcommand("weil-tau", "Correspondence between K-points of W(B) and L-points of B");
  tauCmd->add_option("--algebra", weilArgs.algebra, "JSON {generators, relations} or file")->required();
  tauCmd->add_option("--point", weilArgs.point, "JSON point or file")->required();
  tauCmd->add_flag("--inverse", weilArgs.inverse, "Map an L-point to coordinates");
  addExtension(tauCmd);
  auto* boundsCmd = app.add_subcommand("weil-check-bounds", "Continuity and separated valuation bounds");
  boundsCmd->add_option("--phi", weilArgs.phi, "Coordinates of φ(a)")->required();
  boundsCmd->add_option("--psi", weilArgs.psi, "Coordinates of ψ(a)")->required();
  boundsCmd->add_option("--gamma", weilArgs.gamma, "Value vector γ");
  addExtension(boundsCmd);

  CheckArgs checkArgs;
  auto* checkCmd = app.add_subcommand("check", "Run property suites");
  checkCmd->add_option("suite", checkArgs.suite, "all | series | diffpoly | parse | taylor | solver | weil");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "dhtk: UsageError: " << e.what() << "\n";
    return 2;
  }

  RunConfig cfg;
  try {
    if (!configPath.empty()) applyConfigFile(configPath, cfg);
    if (!precision.empty()) cfg.precision = precision;
    if (!ramification.empty()) cfg.ramification = ramification;
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (!format.empty()) cfg.format = format;
    if (cfg.format != "json" && cfg.format != "pretty")
      throw Error(ErrorCode::UsageError, "format must be json or pretty");

    int code = 0;
    Json doc;
    if (*parseCmd) doc = runParse(parseArgs, cfg);
    else if (*taylorCmd) doc = runTaylor(taylorArgs, cfg);
    else if (*solveCmd) doc = runSolveDH(solveArgs, cfg);
    else if (*henselCmd) doc = runHensel(henselArgs, cfg);
    else if (*algebraCmd) doc = runSolveAlgebra(algebraArgs, cfg);
    else if (*descendCmd) doc = runWeilDescend(weilArgs, cfg);
    else if (*tauCmd) doc = runWeilTau(weilArgs, cfg);
    else if (*boundsCmd) doc = runWeilBounds(weilArgs, cfg);
    else if (*checkCmd) {
      bool passed = false;
      doc = runCheck(checkArgs, cfg, passed);
      code = passed ? 0 : 1;
    }
    emit(doc, cfg);
    return code;
  } catch (const Error& e) {
    std::cerr << "dhtk: " << e.name() << ": " << e.what() << "\n";
    return isInputError(e.code()) ? 2 : 1;
  } catch (const Json::exception& e) {
    std::cerr << "dhtk: InvalidInput: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dhtk: InternalError: " << e.what() << "\n";
    return 1;
  }
}
