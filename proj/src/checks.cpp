#include "dhtk/checks.hpp"

#include <functional>
#include <map>

#include "dhtk/error.hpp"
#include "dhtk/parse.hpp"
#include "dhtk/random.hpp"
#include "dhtk/solver.hpp"
#include "dhtk/taylor.hpp"

namespace dhtk {

namespace {

bool same(const Series& a, const Series& b) { return (a - b).isZeroToPrecision(); }

bool samePoly(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly d = a - b;
  for (const auto& kv : d.terms()) {
    if (!kv.second.isZeroToPrecision()) return false;
  }
  return true;
}

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    ++r_.trials;
    if (!ok) {
      ++r_.failures;
      if (r_.notes.size() < 10) r_.notes.push_back(what);
    }
  }
  // An exception inside a trial counts as a failure of that trial.
  void guarded(const std::string& what, const std::function<bool()>& body) {
    try {
      check(body(), what);
    } catch (const Error& e) {
      check(false, what + ": " + std::string(e.name()) + ": " + e.what());
    }
  }

 private:
  SuiteResult& r_;
};

void seriesSuite(Generator& gen, int trials, Recorder& rec) {
  Tower tower = Tower::uniform(3, 2, 12);
  for (int i = 0; i < trials; ++i) {
    const int level = static_cast<int>(gen.integer(1, 2));
    Series a = gen.series(level, 4, 5, 2, -1, 4);
    Series b = gen.series(level, 4, 5, 2, -1, 4);
    Series c = gen.series(level, 4, 5, 2, -1, 4);
    rec.check(same((a + b) + c, a + (b + c)), "addition is associative");
    rec.check(same(a * (b + c), a * b + a * c), "multiplication distributes");
    rec.check(same(a * b, b * a), "multiplication commutes");
    rec.check(same(derive(a * b), derive(a) * b + a * derive(b)), "Leibniz rule");
    if (!a.isExactZero()) {
      rec.guarded("a * (1/a) = 1", [&] {
        return same(a * inverse(a, tower), Series::constant(1, level));
      });
    }
  }
}

void diffpolySuite(Generator& gen, int trials, Recorder& rec) {
  for (int i = 0; i < trials; ++i) {
    const int level = static_cast<int>(gen.integer(0, 1));
    DiffPoly f = gen.diffPoly(2, 2, 2, 3, 6, level);
    DiffPoly g = gen.diffPoly(2, 2, 2, 3, 6, level);
    rec.check(samePoly(ringDerive(f * g), ringDerive(f) * g + f * ringDerive(g)),
              "ring derivation obeys Leibniz");
    rec.check(samePoly(ringDerive(f + g), ringDerive(f) + ringDerive(g)),
              "ring derivation is additive");
    std::vector<Series> args{gen.series(level + 1, 4, 5), gen.series(level + 1, 4, 5)};
    rec.guarded("diffEval commutes with derivation", [&] {
      return same(diffEval(ringDerive(f).liftedTo(level + 1), args),
                  derive(diffEval(f.liftedTo(level + 1), args)));
    });
  }
}

void parseSuite(Generator& gen, int trials, Recorder& rec) {
  for (int i = 0; i < trials; ++i) {
    const int level = static_cast<int>(gen.integer(0, 2));
    DiffPoly f = gen.diffPoly(3, 4, 3, 4, 12, level);
    rec.guarded("print then parse is the identity", [&] {
      ParseOptions options;
      options.numVars = f.numVars();
      options.minLevel = f.level();
      return parseDiffPoly(toText(f), options) == f;
    });
  }
}

void taylorSuite(Generator& gen, int trials, Recorder& rec) {
  for (int i = 0; i < trials; ++i) {
    DHProblem p = randomDHProblem(gen, i % 3).normalized();
    rec.guarded("Taylor identities", [&] {
      const int N = 8;
      ProlongedPoint point = prolong(p.f, p.jet, N - 1, {});
      Series alpha = twistedTaylor(point, N);
      Series d = alpha;
      for (int n = 0; n <= p.order(); ++n) {
        if (n) d = derive(d);
        if (!same(d.coefficient(0), p.jet[static_cast<std::size_t>(n)])) return false;
      }
      if (!checkValuedTaylor(point, alpha)) return false;
      // T* is a differential homomorphism: T*(f) = f(T*(x)).
      DiffPoly q = gen.diffPoly(1, 1, 2, 3, 5, p.level());
      Series lhs = taylorImage(point, q, N - 1);
      Series rhs = diffEval(q.liftedTo(alpha.level()), alpha);
      return same(truncate(lhs, N - 2), truncate(rhs, N - 2));
    });
  }
}

void solverSuite(Generator& gen, int trials, Recorder& rec) {
  for (int i = 0; i < trials; ++i) {
    DHProblem p = randomDHProblem(gen, i % 3);
    rec.guarded("checkDL accepts solveDH output", [&] {
      DHSolution sol = solveDH(p, 8);
      return sol.ballCheck && checkDL(p, sol.b);
    });
  }
  for (int i = 0; i < trials; ++i) {
    // x^2 - (a^2 + t0·u): a simple root lifting from x = a.
    Rational a = gen.rational(5, false);
    Series u = gen.series(1, 3, 5, 1, 0, 4);
    Series target = Series::constant(a * a, 1) + Series::variable(0, 1) * u;
    DiffPoly f = DiffPoly::variable(VarKey{0, 0}, 1, 1) * DiffPoly::variable(VarKey{0, 0}, 1, 1) -
                 DiffPoly::constant(target, 1);
    const long prec = gen.integer(2, 12);
    rec.guarded("Newton converges quadratically", [&] {
      std::vector<DiffPoly> sys{f};
      std::vector<Series> approx{Series::constant(a, 1)};
      HenselResult r = henselLiftSystem(sys, {}, approx, Rational(prec));
      long bound = 2;
      while ((1L << (bound - 2)) < prec) ++bound;
      Series residual = r.roots[0] * r.roots[0] - target;
      return r.iterations <= bound && residual.isZeroToPrecision() &&
             (!residual.precOrder() || *residual.precOrder() >= prec);
    });
  }
}

LPoint randomLPoint(Generator& gen, const FiniteFreeAlgebra& alg, int generators) {
  LPoint point(static_cast<std::size_t>(generators));
  for (auto& jets : point) {
    LElement x;
    for (int i = 0; i < alg.dim(); ++i) x.push_back(gen.series(alg.level(), 3, 3));
    jets.push_back(x);
  }
  return point;
}

// Relations over L vanishing at the point: random polynomial minus its value.
LPresentation presentationThrough(Generator& gen, const FiniteFreeAlgebra& alg,
                                  const LPoint& point) {
  const int g = static_cast<int>(point.size());
  LPresentation B;
  for (int k = 0; k < g; ++k) B.generators.push_back("x" + std::to_string(k + 1));
  const int count = static_cast<int>(gen.integer(0, 2));
  for (int r = 0; r < count; ++r) {
    DiffPoly f = gen.diffPoly(g, 0, 2, 3, 4, alg.level()).withNumVars(g + alg.dim());
    LElement v = evaluateInL(f, point, alg);
    for (int i = 0; i < alg.dim(); ++i) {
      f = f - v[static_cast<std::size_t>(i)] *
                  DiffPoly::variable(VarKey{g + i, 0}, g + alg.dim(), alg.level());
    }
    B.relations.push_back(f);
  }
  return B;
}

bool samePoint(const LPoint& a, const LPoint& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) return false;
    for (std::size_t j = 0; j < a[k].size(); ++j) {
      for (std::size_t i = 0; i < a[k][j].size(); ++i) {
        if (!same(a[k][j][i], b[k][j][i])) return false;
      }
    }
  }
  return true;
}

void weilSuite(Generator& gen, int trials, Recorder& rec) {
  const std::vector<FiniteFreeAlgebra> algebras{FiniteFreeAlgebra::gaussian(),
                                                FiniteFreeAlgebra::sqrtT(), cubicExample()};
  for (const auto& alg : algebras) rec.check(checkAxioms(alg).all(), "structure axioms");

  for (int i = 0; i < trials; ++i) {
    const auto& alg = algebras[static_cast<std::size_t>(i) % algebras.size()];
    const int g = static_cast<int>(gen.integer(1, 2));
    LPoint point = randomLPoint(gen, alg, g);
    LPresentation B = presentationThrough(gen, alg, point);
    rec.guarded("tau round trip", [&] {
      DescendedPresentation desc = descend(B, alg);
      KPoint k = tauInverse(point, B, alg);
      return samePoint(tau(k, desc, alg), point) && tauInverse(tau(k, desc, alg), B, alg) == k;
    });
    DiffPoly p = gen.diffPoly(g + alg.dim(), 2, 2, 3, 4, alg.level());
    // Basis labels enter as constants only.
    DiffPoly q(g + alg.dim(), alg.level());
    for (const auto& [mono, coeff] : p.terms()) {
      Monomial m;
      for (const auto& [key, e] : mono.factors()) {
        VarKey k2 = key.var < g ? key : VarKey{key.var, 0};
        m = m * Monomial::of(k2, e);
      }
      q.addTerm(m, coeff);
    }
    rec.guarded("descent derivation", [&] {
      DescendedPresentation desc{B.generators, alg.dim(), {}};
      return verifyDescentDerivation(desc, alg, 3) && verifyDescentDerivationOn(q, g, alg);
    });
  }

  const FiniteFreeAlgebra ram = FiniteFreeAlgebra::sqrtT();
  for (int i = 0; i < trials; ++i) {
    LElement phi{gen.series(1, 3, 5, 1, -2, 5), gen.series(1, 3, 5, 1, -2, 5)};
    LElement psi = phi;
    for (auto& c : psi) {
      if (gen.coin(0.9)) c = c + gen.series(1, 2, 5, 1, gen.integer(-1, 5), 4);
    }
    ValueVec gamma({gen.rational(4)});
    rec.guarded("continuity bound", [&] {
      ContinuityWitness w = continuityBound(ram, phi, psi, gamma);
      return !w.hypothesis || w.conclusion;
    });
    rec.guarded("separated lower bound", [&] { return separatedLowerBound(ram, phi, psi).all(); });
    rec.guarded("sampled separatedness", [&] {
      return isSeparatedSample(ram.basis, {phi, psi, ram.sub(phi, psi)});
    });
  }
  rec.check(!isSeparatedSample(nonSeparatedExample(), {{Series(1), Series(-1)}}),
            "non-separated basis is rejected");
}

}  // namespace

FiniteFreeAlgebra cubicExample() {
  FiniteFreeAlgebra alg;
  alg.labels = {"1", "u", "u2"};
  Series z(0), o(1), two(2);
  // θ^i · θ^j = θ^(i+j), reduced by θ³ = 2.
  alg.structure.assign(3, std::vector<std::vector<Series>>(3, std::vector<Series>(3, z)));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int s = i + j;
      alg.structure[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                   [static_cast<std::size_t>(s % 3)] = s >= 3 ? two : o;
    }
  }
  alg.derivation.assign(3, std::vector<Series>(3, z));
  alg.unit = {o, z, z};
  alg.basis.level = 0;
  alg.basis.valuations = {ValueVec(), ValueVec(), ValueVec()};
  alg.basis.declaredSeparated = true;
  return alg;
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"series", "diffpoly", "parse",
                                               "taylor", "solver",   "weil"};
  return names;
}

SuiteResult runSuite(const std::string& name, std::uint64_t seed, int trials) {
  static const std::map<std::string, std::function<void(Generator&, int, Recorder&)>> suites{
      {"series", seriesSuite}, {"diffpoly", diffpolySuite}, {"parse", parseSuite},
      {"taylor", taylorSuite}, {"solver", solverSuite},     {"weil", weilSuite}};
  auto it = suites.find(name);
  if (it == suites.end()) throw Error(ErrorCode::UsageError, "unknown suite '" + name + "'");
  SuiteResult result;
  result.name = name;
  Generator gen(seed);
  Recorder rec(result);
  it->second(gen, trials, rec);
  return result;
}

}  // namespace dhtk
