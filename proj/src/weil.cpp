#include "dhtk/weil.hpp"

#include <algorithm>
#include <cctype>

#include "dhtk/error.hpp"
#include "dhtk/parse.hpp"

namespace dhtk {

namespace {

bool polyZeroToPrecision(const DiffPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& kv) { return kv.second.isZeroToPrecision(); });
}

bool elementsEqual(const LElement& a, const LElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] - b[i]).isZeroToPrecision()) return false;
  }
  return true;
}

// Multiplication of coordinate vectors with entries in any ring over K.
template <class T>
std::vector<T> multiplyCoords(const FiniteFreeAlgebra& alg, const std::vector<T>& a,
                              const std::vector<T>& b, const T& zero) {
  const auto l = static_cast<std::size_t>(alg.dim());
  std::vector<T> out(l, zero);
  for (std::size_t i = 0; i < l; ++i) {
    if (a[i].isZero()) continue;
    for (std::size_t j = 0; j < l; ++j) {
      if (b[j].isZero()) continue;
      T ab = a[i] * b[j];
      for (std::size_t m = 0; m < l; ++m) {
        const Series& c = alg.structure[i][j][m];
        if (c.isExactZero()) continue;
        out[m] = out[m] + c * ab;
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ValueVec ValuedBasis::epsilon() const {
  if (valuations.empty()) throw Error(ErrorCode::InvalidInput, "empty basis");
  return *std::min_element(valuations.begin(), valuations.end());
}

ValueVec ValuedBasis::valuation(const LElement& a) const {
  if (a.size() != dim()) throw Error(ErrorCode::InvalidInput, "coordinate count mismatch");
  if (realization) {
    int level = this->level;
    for (const auto& b : *realization) level = std::max(level, b.level());
    Series sum = Series::zero(level);
    for (std::size_t i = 0; i < a.size(); ++i)
      sum = sum + embed(a[i], level) * embed((*realization)[i], level);
    return dhtk::valuation(sum);
  }
  if (level == 0) {
    bool zero = std::all_of(a.begin(), a.end(), [](const Series& s) { return s.isExactZero(); });
    return zero ? ValueVec::infinity() : ValueVec();
  }
  if (!declaredSeparated)
    throw Error(ErrorCode::BasisNotDeclaredSeparated,
                "valuation on L needs a realization or a separated basis");
  std::optional<ValueVec> best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ValueVec v = dhtk::valuation(a[i]);
    if (v.isInfinity()) continue;
    v = v + valuations[i];
    if (!best || v < *best) best = v;
  }
  return best ? *best : ValueVec::infinity();
}

LElement FiniteFreeAlgebra::zero() const {
  return LElement(static_cast<std::size_t>(dim()), Series::zero(level()));
}

LElement FiniteFreeAlgebra::basisElement(int i) const {
  LElement e = zero();
  e.at(static_cast<std::size_t>(i)) = Series::constant(1, level());
  return e;
}

LElement FiniteFreeAlgebra::constant(const Series& k) const {
  if (k.level() > level()) throw Error(ErrorCode::LevelMismatch, "constant is not in K");
  LElement out;
  for (const auto& u : unit) out.push_back(embed(k, level()) * u);
  return out;
}

LElement FiniteFreeAlgebra::add(const LElement& a, const LElement& b) const {
  LElement out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

LElement FiniteFreeAlgebra::sub(const LElement& a, const LElement& b) const {
  LElement out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

LElement FiniteFreeAlgebra::multiply(const LElement& a, const LElement& b) const {
  const auto l = static_cast<std::size_t>(dim());
  LElement out = zero();
  for (std::size_t i = 0; i < l; ++i) {
    if (a[i].isExactZero()) continue;
    for (std::size_t j = 0; j < l; ++j) {
      if (b[j].isExactZero()) continue;
      Series ab = a[i] * b[j];
      for (std::size_t m = 0; m < l; ++m) {
        const Series& c = structure[i][j][m];
        if (!c.isExactZero()) out[m] = out[m] + c * ab;
      }
    }
  }
  return out;
}

LElement FiniteFreeAlgebra::derive(const LElement& a) const {
  const auto l = static_cast<std::size_t>(dim());
  LElement out;
  for (const auto& x : a) out.push_back(dhtk::derive(x));
  for (std::size_t i = 0; i < l; ++i) {
    if (a[i].isExactZero()) continue;
    for (std::size_t m = 0; m < l; ++m) {
      if (!derivation[i][m].isExactZero()) out[m] = out[m] + a[i] * derivation[i][m];
    }
  }
  return out;
}

bool FiniteFreeAlgebra::isZero(const LElement& a) const {
  return std::all_of(a.begin(), a.end(), [](const Series& s) { return s.isZeroToPrecision(); });
}

FiniteFreeAlgebra FiniteFreeAlgebra::gaussian() {
  FiniteFreeAlgebra alg;
  alg.labels = {"1", "i"};
  Series z(0), o(1), m(-1);
  alg.structure = {{{o, z}, {z, o}}, {{z, o}, {m, z}}};
  alg.derivation = {{z, z}, {z, z}};
  alg.unit = {o, z};
  alg.basis.level = 0;
  alg.basis.valuations = {ValueVec(), ValueVec()};
  alg.basis.declaredSeparated = true;
  return alg;
}

FiniteFreeAlgebra FiniteFreeAlgebra::sqrtT() {
  FiniteFreeAlgebra alg;
  alg.labels = {"1", "s"};
  Series z = Series::zero(1), o = Series::constant(1, 1), t = Series::variable(0, 1);
  alg.structure = {{{o, z}, {z, o}}, {{z, o}, {t, z}}};
  Series half = Series::monomial(Series(makeRational(1, 2)), -1);
  alg.derivation = {{z, z}, {z, half}};
  alg.unit = {o, z};
  alg.basis.level = 1;
  alg.basis.valuations = {ValueVec({Rational(0)}), ValueVec({makeRational(1, 2)})};
  alg.basis.realization = std::vector<Series>{o, Series::variable(0, 1, makeRational(1, 2))};
  alg.basis.declaredSeparated = true;
  return alg;
}

AxiomReport checkAxioms(const FiniteFreeAlgebra& alg) {
  const int l = alg.dim();
  AxiomReport r{true, true, true, true};
  for (int i = 0; i < l; ++i) {
    LElement bi = alg.basisElement(i);
    if (!elementsEqual(alg.multiply(alg.one(), bi), bi)) r.unital = false;
    for (int j = 0; j < l; ++j) {
      LElement bj = alg.basisElement(j);
      LElement bij = alg.multiply(bi, bj);
      if (!elementsEqual(bij, alg.multiply(bj, bi))) r.commutative = false;
      LElement lhs = alg.derive(bij);
      LElement rhs = alg.add(alg.multiply(alg.derive(bi), bj), alg.multiply(bi, alg.derive(bj)));
      if (!elementsEqual(lhs, rhs)) r.leibniz = false;
      for (int k = 0; k < l; ++k) {
        LElement bk = alg.basisElement(k);
        if (!elementsEqual(alg.multiply(bij, bk), alg.multiply(bi, alg.multiply(bj, bk))))
          r.associative = false;
      }
    }
  }
  return r;
}

ValuedBasis nonSeparatedExample() {
  ValuedBasis b;
  b.level = 0;
  b.valuations = {ValueVec({Rational(0)}), ValueVec({Rational(0)})};
  b.realization = std::vector<Series>{Series::constant(1, 1),
                                      Series::constant(1, 1) + Series::variable(0, 1)};
  return b;
}

// ---------------------------------------------------------------------------

std::string DescendedPresentation::name(int var) const {
  return generators.at(static_cast<std::size_t>(var / dim)) + "(" +
         std::to_string(var % dim + 1) + ")";
}

VariableNamer DescendedPresentation::namer() const {
  return [this](int var) { return name(var); };
}

std::vector<Series> coordinates(const LElement& xi) { return xi; }

std::vector<Series> coordinates(const FiniteFreeAlgebra& alg, const std::string& expr) {
  ParseOptions options;
  options.minLevel = alg.level();
  options.numVars = std::max(1, alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    const auto& label = alg.labels[static_cast<std::size_t>(i)];
    if (!label.empty() && !std::isdigit(static_cast<unsigned char>(label[0])))
      options.symbols[label] = i;
  }
  DiffPoly p = parseDiffPoly(expr, options);
  return evaluateInL(p.withNumVars(alg.dim()), LPoint{}, alg);
}

LElement evaluateInL(const DiffPoly& r, const LPoint& point, const FiniteFreeAlgebra& alg) {
  if (r.level() > alg.level()) throw Error(ErrorCode::LevelMismatch, "coefficients are not in K");
  const int g = static_cast<int>(point.size());
  LElement total = alg.zero();
  for (const auto& [mono, coeff] : r.terms()) {
    LElement term = alg.constant(coeff);
    for (const auto& [key, e] : mono.factors()) {
      LElement factor;
      if (key.var < g) {
        const auto& jets = point[static_cast<std::size_t>(key.var)];
        if (key.order >= static_cast<int>(jets.size()))
          throw Error(ErrorCode::JetTooShort, "point lacks a derivative value");
        factor = jets[static_cast<std::size_t>(key.order)];
      } else {
        if (key.order != 0 || key.var - g >= alg.dim())
          throw Error(ErrorCode::InvalidInput, "basis labels are constants");
        factor = alg.basisElement(key.var - g);
      }
      for (int k = 0; k < e; ++k) term = alg.multiply(term, factor);
    }
    total = alg.add(total, term);
  }
  return total;
}

std::vector<DiffPoly> descendPolynomial(const DiffPoly& f, int numGenerators,
                                        const FiniteFreeAlgebra& alg) {
  if (f.level() > alg.level()) throw Error(ErrorCode::LevelMismatch, "coefficients are not in K");
  const int l = alg.dim();
  const int vars = std::max(1, numGenerators * l);
  const int level = alg.level();
  const DiffPoly zeroPoly = DiffPoly::constant(Series::zero(level), vars);
  std::vector<DiffPoly> total(static_cast<std::size_t>(l), zeroPoly);

  auto constantCoords = [&](const Series& c) {
    std::vector<DiffPoly> out;
    for (const auto& u : alg.unit) out.push_back(DiffPoly::constant(embed(c, level) * u, vars));
    return out;
  };
  for (const auto& [mono, coeff] : f.terms()) {
    std::vector<DiffPoly> term = constantCoords(coeff);
    for (const auto& [key, e] : mono.factors()) {
      std::vector<DiffPoly> factor(static_cast<std::size_t>(l), zeroPoly);
      if (key.var < numGenerators) {
        for (int i = 0; i < l; ++i)
          factor[static_cast<std::size_t>(i)] =
              DiffPoly::variable(VarKey{key.var * l + i, key.order}, vars, level);
      } else {
        if (key.order != 0 || key.var - numGenerators >= l)
          throw Error(ErrorCode::InvalidInput, "basis labels are constants");
        factor[static_cast<std::size_t>(key.var - numGenerators)] =
            DiffPoly::constant(Series::constant(1, level), vars);
      }
      for (int k = 0; k < e; ++k) term = multiplyCoords(alg, term, factor, zeroPoly);
    }
    for (int i = 0; i < l; ++i)
      total[static_cast<std::size_t>(i)] = total[static_cast<std::size_t>(i)] + term[static_cast<std::size_t>(i)];
  }
  return total;
}

DescendedPresentation descend(const LPresentation& B, const FiniteFreeAlgebra& alg) {
  DescendedPresentation desc{B.generators, alg.dim(), {}};
  const int g = static_cast<int>(B.generators.size());
  for (std::size_t r = 0; r < B.relations.size(); ++r) {
    auto coords = descendPolynomial(B.relations[r], g, alg);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].isZero()) continue;
      desc.relations.push_back({coords[i], static_cast<int>(r), static_cast<int>(i)});
    }
  }
  return desc;
}

LPoint tau(const KPoint& phiTilde, const DescendedPresentation& desc,
           const FiniteFreeAlgebra& alg) {
  if (static_cast<int>(phiTilde.size()) != desc.numVars())
    throw Error(ErrorCode::InvalidInput, "point needs a value for every descended generator");
  Jet jet(phiTilde);
  for (const auto& rel : desc.relations) {
    if (!algEval(rel.poly, jet).isZeroToPrecision())
      throw Error(ErrorCode::RelationViolated,
                  "descended relation " + toText(rel.poly, desc.namer()) + " does not vanish");
  }
  const std::size_t g = desc.generators.size();
  const auto l = static_cast<std::size_t>(alg.dim());
  LPoint phi(g);
  for (std::size_t k = 0; k < g; ++k) {
    std::size_t orders = phiTilde[k * l].size();
    for (std::size_t i = 1; i < l; ++i) orders = std::min(orders, phiTilde[k * l + i].size());
    for (std::size_t j = 0; j < orders; ++j) {
      LElement x;
      for (std::size_t i = 0; i < l; ++i) x.push_back(embed(phiTilde[k * l + i][j], alg.level()));
      phi[k].push_back(std::move(x));
    }
  }
  return phi;
}

KPoint tauInverse(const LPoint& phi, const LPresentation& B, const FiniteFreeAlgebra& alg) {
  if (phi.size() != B.generators.size())
    throw Error(ErrorCode::InvalidInput, "point needs a value for every generator");
  for (const auto& r : B.relations) {
    if (!alg.isZero(evaluateInL(r, phi, alg)))
      throw Error(ErrorCode::RelationViolated, "relation does not vanish at the point");
  }
  const auto l = static_cast<std::size_t>(alg.dim());
  KPoint out(phi.size() * l);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    for (const auto& x : phi[k]) {
      for (std::size_t i = 0; i < l; ++i) out[k * l + i].push_back(x[i]);
    }
  }
  return out;
}

DiffPoly descentDerivationOf(const DescendedPresentation& desc, const FiniteFreeAlgebra& alg,
                             VarKey var) {
  const int l = alg.dim();
  const int k = var.var / l, i = var.var % l;
  const int vars = desc.numVars();
  DiffPoly out = DiffPoly::variable(VarKey{var.var, var.order + 1}, vars, alg.level());
  for (int m = 0; m < l; ++m) {
    const Series& d = alg.derivation[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
    if (d.isExactZero()) continue;
    out = out - d * DiffPoly::variable(VarKey{k * l + m, var.order}, vars, alg.level());
  }
  return out;
}

DiffPoly applyDerivation(const DiffPoly& p, const std::function<DiffPoly(VarKey)>& image) {
  DiffPoly out(p.numVars(), p.level());
  for (const auto& [mono, coeff] : p.terms()) {
    Series dc = derive(coeff);
    if (!dc.isExactZero()) out.addTerm(mono, dc);
    for (const auto& [key, e] : mono.factors()) {
      DiffPoly rest = DiffPoly::term(scale(coeff, Rational(e)), mono.withExponent(key, e - 1),
                                     p.numVars());
      DiffPoly contribution = rest * image(key).liftedTo(p.level());
      for (const auto& [m2, c2] : contribution.terms()) out.addTerm(m2, c2);
    }
  }
  return out;
}

bool verifyDescentDerivation(const DescendedPresentation& desc, const FiniteFreeAlgebra& alg,
                             int maxOrder) {
  const int l = alg.dim();
  const int vars = desc.numVars();
  for (int k = 0; k < static_cast<int>(desc.generators.size()); ++k) {
    for (int j = 0; j <= maxOrder; ++j) {
      for (int m = 0; m < l; ++m) {
        DiffPoly lhs = descentDerivationOf(desc, alg, VarKey{k * l + m, j});
        for (int i = 0; i < l; ++i) {
          const Series& d = alg.derivation[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
          if (!d.isExactZero())
            lhs = lhs + d * DiffPoly::variable(VarKey{k * l + i, j}, vars, alg.level());
        }
        DiffPoly rhs = DiffPoly::variable(VarKey{k * l + m, j + 1}, vars, alg.level());
        if (!polyZeroToPrecision(lhs - rhs)) return false;
      }
    }
  }
  return true;
}

bool verifyDescentDerivationOn(const DiffPoly& p, int numGenerators,
                               const FiniteFreeAlgebra& alg) {
  const int l = alg.dim();
  const int level = alg.level();
  DiffPoly q = p.liftedTo(std::max(level, p.level()));
  // δ on L[x]: x^(j) -> x^(j+1), b_i -> Σ_m d[i][m] b_m.
  DiffPoly dp = applyDerivation(q, [&](VarKey key) {
    if (key.var < numGenerators)
      return DiffPoly::variable(VarKey{key.var, key.order + 1}, q.numVars(), level);
    DiffPoly img(q.numVars(), level);
    const int i = key.var - numGenerators;
    for (int m = 0; m < l; ++m) {
      const Series& d = alg.derivation[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
      if (!d.isExactZero())
        img = img + d * DiffPoly::variable(VarKey{numGenerators + m, 0}, q.numVars(), level);
    }
    return img;
  });
  auto lhs = descendPolynomial(dp, numGenerators, alg);

  DescendedPresentation desc;
  desc.generators.assign(static_cast<std::size_t>(numGenerators), "x");
  desc.dim = l;
  auto wp = descendPolynomial(q, numGenerators, alg);
  for (int m = 0; m < l; ++m) {
    DiffPoly rhs = applyDerivation(wp[static_cast<std::size_t>(m)], [&](VarKey key) {
      return descentDerivationOf(desc, alg, key);
    });
    for (int i = 0; i < l; ++i) {
      const Series& d = alg.derivation[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
      if (!d.isExactZero()) rhs = rhs + d * wp[static_cast<std::size_t>(i)];
    }
    if (!polyZeroToPrecision(lhs[static_cast<std::size_t>(m)] - rhs)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ContinuityWitness continuityBound(const FiniteFreeAlgebra& alg, const LElement& phiCoords,
                                  const LElement& psiCoords, const ValueVec& gamma) {
  ContinuityWitness w;
  w.epsilon = alg.basis.epsilon();
  const ValueVec threshold = gamma - w.epsilon;
  w.hypothesis = true;
  for (std::size_t i = 0; i < phiCoords.size(); ++i) {
    w.coordinateValuations.push_back(valuation(phiCoords[i] - psiCoords[i]));
    if (!(w.coordinateValuations.back() > threshold)) w.hypothesis = false;
  }
  LPoint phi = {{phiCoords}}, psi = {{psiCoords}};
  w.difference = alg.basis.valuation(alg.sub(phi[0][0], psi[0][0]));
  w.conclusion = w.difference > gamma;
  return w;
}

bool SeparatedBoundReport::all() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

SeparatedBoundReport separatedLowerBound(const FiniteFreeAlgebra& alg, const LElement& phi,
                                         const LElement& psi) {
  if (!alg.basis.declaredSeparated)
    throw Error(ErrorCode::BasisNotDeclaredSeparated, "basis is not declared separated");
  SeparatedBoundReport r;
  r.difference = alg.basis.valuation(alg.sub(phi, psi));
  for (std::size_t j = 0; j < phi.size(); ++j) {
    ValueVec v = valuation(phi[j] - psi[j]);
    r.coordinateValuations.push_back(v);
    if (r.difference.isInfinity() || v.isInfinity()) {
      r.holds.push_back(true);
    } else {
      r.holds.push_back(v >= r.difference - alg.basis.valuations[j]);
    }
  }
  return r;
}

bool isSeparatedSample(const ValuedBasis& basis, const std::vector<LElement>& samples) {
  if (!basis.realization && basis.level != 0)
    throw Error(ErrorCode::InvalidInput, "sampling needs a realization of the basis");
  ValuedBasis direct = basis;
  direct.declaredSeparated = false;
  for (const auto& a : samples) {
    ValueVec lhs = direct.valuation(a);
    std::optional<ValueVec> rhs;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].isExactZero()) continue;
      ValueVec v = valuation(a[i]) + basis.valuations[i];
      if (!rhs || v < *rhs) rhs = v;
    }
    if (!(lhs == (rhs ? *rhs : ValueVec::infinity()))) return false;
  }
  return true;
}

}  // namespace dhtk
