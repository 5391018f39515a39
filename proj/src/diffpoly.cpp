#include "dhtk/diffpoly.hpp"

#include <algorithm>

#include "dhtk/error.hpp"

namespace dhtk {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(VarKey key, int exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.push_back({key, exponent});
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [k, e] : factors_) d += e;
  return d;
}

int Monomial::exponentOf(VarKey key) const {
  for (const auto& [k, e] : factors_) {
    if (k == key) return e;
  }
  return 0;
}

Monomial Monomial::withExponent(VarKey key, int exponent) const {
  Monomial m;
  bool placed = false;
  for (const auto& [k, e] : factors_) {
    if (!placed && key < k) {
      if (exponent > 0) m.factors_.push_back({key, exponent});
      placed = true;
    }
    if (k == key) {
      if (exponent > 0) m.factors_.push_back({key, exponent});
      placed = true;
    } else {
      m.factors_.push_back({k, e});
    }
  }
  if (!placed && exponent > 0) m.factors_.push_back({key, exponent});
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      m.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      m.factors_.push_back(*b++);
    } else {
      m.factors_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return m;
}

bool DegLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da > db;
  // Walk both from the largest key down, one unit of exponent at a time.
  auto ia = a.factors().rbegin();
  auto ib = b.factors().rbegin();
  int ra = ia != a.factors().rend() ? ia->second : 0;
  int rb = ib != b.factors().rend() ? ib->second : 0;
  while (ia != a.factors().rend() && ib != b.factors().rend()) {
    if (ia->first != ib->first) return ib->first < ia->first;
    int step = std::min(ra, rb);
    ra -= step;
    rb -= step;
    if (ra == 0 && ++ia != a.factors().rend()) ra = ia->second;
    if (rb == 0 && ++ib != b.factors().rend()) rb = ib->second;
  }
  return false;
}

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly::DiffPoly(int numVars, int level) : numVars_(numVars), level_(level) {}

DiffPoly DiffPoly::constant(const Series& c, int numVars) {
  return term(c, Monomial(), numVars);
}

DiffPoly DiffPoly::variable(VarKey key, int numVars, int level) {
  return term(Series::constant(1, level), Monomial::of(key), numVars);
}

DiffPoly DiffPoly::term(const Series& c, const Monomial& m, int numVars) {
  for (const auto& [k, e] : m.factors()) {
    if (k.var < 0 || k.var >= numVars || k.order < 0)
      throw Error(ErrorCode::UnknownVariable, "variable index out of range");
  }
  DiffPoly f(numVars, c.level());
  f.addTerm(m, c);
  return f;
}

void DiffPoly::addTerm(const Monomial& m, const Series& c) {
  if (c.isExactZero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.isExactZero()) terms_.erase(it);
}

bool DiffPoly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isOne());
}

bool DiffPoly::involves(int var) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& [k, e] : m.factors()) {
      if (k.var == var) return true;
    }
  }
  return false;
}

std::set<VarKey> DiffPoly::keys() const {
  std::set<VarKey> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [k, e] : m.factors()) out.insert(k);
  }
  return out;
}

int DiffPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int DiffPoly::degreeIn(VarKey key) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponentOf(key));
  return d;
}

DiffPoly DiffPoly::liftedTo(int level) const {
  if (level == level_) return *this;
  DiffPoly out(numVars_, level);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, embed(c, level));
  return out;
}

DiffPoly DiffPoly::withNumVars(int numVars) const {
  for (const auto& k : keys()) {
    if (k.var >= numVars)
      throw Error(ErrorCode::UnknownVariable, "polynomial uses x" + std::to_string(k.var + 1));
  }
  DiffPoly out = *this;
  out.numVars_ = numVars;
  return out;
}

namespace {

void requireSameLevel(const DiffPoly& a, const DiffPoly& b) {
  if (a.level() != b.level())
    throw Error(ErrorCode::LevelMismatch,
                "polynomials over levels " + std::to_string(a.level()) + " and " +
                    std::to_string(b.level()));
}

}  // namespace

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  requireSameLevel(a, b);
  DiffPoly out(std::max(a.numVars_, b.numVars_), a.level_);
  out.terms_ = a.terms_;
  for (const auto& [m, c] : b.terms_) out.addTerm(m, c);
  return out;
}

DiffPoly operator-(const DiffPoly& a) {
  DiffPoly out(a.numVars_, a.level_);
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
  return out;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  requireSameLevel(a, b);
  DiffPoly out(std::max(a.numVars_, b.numVars_), a.level_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.addTerm(ma * mb, ca * cb);
  }
  return out;
}

DiffPoly operator*(const Series& c, const DiffPoly& a) {
  if (c.level() != a.level_)
    throw Error(ErrorCode::LevelMismatch, "scalar and polynomial levels differ");
  DiffPoly out(a.numVars_, a.level_);
  for (const auto& [m, x] : a.terms_) out.addTerm(m, c * x);
  return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.level_ != b.level_ || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
  }
  return true;
}

DiffPoly power(const DiffPoly& f, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidInput, "negative polynomial power");
  DiffPoly r = DiffPoly::constant(Series::constant(1, f.level()), f.numVars());
  for (int i = 0; i < exponent; ++i) r = r * f;
  return r;
}

int order(const DiffPoly& f, int var) {
  int best = -1;
  for (const auto& k : f.keys()) {
    if (k.var == var) best = std::max(best, k.order);
  }
  if (best < 0)
    throw Error(ErrorCode::VariableAbsent,
                "x" + std::to_string(var + 1) + " does not occur");
  return best;
}

DiffPoly partial(const DiffPoly& f, VarKey key) {
  DiffPoly out(f.numVars(), f.level());
  for (const auto& [m, c] : f.terms()) {
    int e = m.exponentOf(key);
    if (e == 0) continue;
    out.addTerm(m.withExponent(key, e - 1), scale(c, e));
  }
  return out;
}

DiffPoly separant(const DiffPoly& f, int var) {
  return partial(f, VarKey{var, order(f, var)});
}

DiffPoly ringDerive(const DiffPoly& f) {
  DiffPoly out(f.numVars(), f.level());
  for (const auto& [m, c] : f.terms()) {
    if (f.level() > 0) out.addTerm(m, derive(c));
    for (const auto& [k, e] : m.factors()) {
      VarKey next{k.var, k.order + 1};
      Monomial shifted = m.withExponent(k, e - 1);
      shifted = shifted.withExponent(next, shifted.exponentOf(next) + 1);
      out.addTerm(shifted, scale(c, e));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jets and evaluation

Jet::Jet(std::vector<std::vector<Series>> perVar) : perVar_(std::move(perVar)) {}

Jet Jet::single(std::vector<Series> values) { return Jet({std::move(values)}); }

const std::vector<Series>& Jet::values(int var) const {
  if (var < 0 || static_cast<std::size_t>(var) >= perVar_.size())
    throw Error(ErrorCode::JetTooShort, "jet has no entries for x" + std::to_string(var + 1));
  return perVar_[static_cast<std::size_t>(var)];
}

bool Jet::has(VarKey key) const {
  return key.var >= 0 && static_cast<std::size_t>(key.var) < perVar_.size() &&
         key.order >= 0 &&
         static_cast<std::size_t>(key.order) < perVar_[static_cast<std::size_t>(key.var)].size();
}

const Series& Jet::at(VarKey key) const {
  if (!has(key))
    throw Error(ErrorCode::JetTooShort, "jet does not supply x" + std::to_string(key.var + 1) +
                                            "^(" + std::to_string(key.order) + ")");
  return perVar_[static_cast<std::size_t>(key.var)][static_cast<std::size_t>(key.order)];
}

int Jet::level() const {
  int l = 0;
  for (const auto& v : perVar_) {
    for (const auto& s : v) l = std::max(l, s.level());
  }
  return l;
}

Series algEval(const DiffPoly& f, const Jet& jet) {
  const int level = std::max(f.level(), jet.level());
  for (const auto& k : f.keys()) jet.at(k);
  Series sum = Series::zero(level);
  for (const auto& [m, c] : f.terms()) {
    Series prod = embed(c, level);
    for (const auto& [k, e] : m.factors()) {
      Series x = embed(jet.at(k), level);
      for (int i = 0; i < e; ++i) prod = prod * x;
    }
    sum = sum + prod;
  }
  return sum;
}

Series diffEval(const DiffPoly& f, std::span<const Series> args) {
  std::vector<std::vector<Series>> perVar(args.size());
  for (int var = 0; var < static_cast<int>(args.size()); ++var) {
    if (!f.involves(var)) continue;
    const Series& a = args[static_cast<std::size_t>(var)];
    const int n = order(f, var);
    // The n-th derivative must stay known below its leading term or t^0.
    if (n > 0 && a.precOrder()) {
      Rational floor = std::min<Rational>(*a.lowestExponent(), 0);
      if (*a.precOrder() - n <= floor)
        throw Error(ErrorCode::InsufficientPrecision,
                    "argument precision does not survive " + std::to_string(n) +
                        " derivatives");
    }
    auto& jet = perVar[static_cast<std::size_t>(var)];
    jet.push_back(a);
    for (int j = 1; j <= n; ++j) jet.push_back(derive(jet.back()));
  }
  return algEval(f, Jet(std::move(perVar)));
}

Series diffEval(const DiffPoly& f, const Series& a) {
  return diffEval(f, std::span<const Series>(&a, 1));
}

std::size_t selectVanishingFactor(std::span<const DiffPoly> factors, const Jet& jet) {
  std::vector<std::size_t> vanishing;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (algEval(factors[i], jet).isZeroToPrecision()) vanishing.push_back(i);
  }
  if (vanishing.empty())
    throw Error(ErrorCode::NoVanishingFactor, "no factor vanishes at the jet");
  if (vanishing.size() > 1)
    throw Error(ErrorCode::MultipleVanishingFactors,
                std::to_string(vanishing.size()) + " factors vanish at the jet");

  const DiffPoly& g = factors[vanishing.front()];
  DiffPoly product = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) product = product * factors[i];
  const int n = order(product, 0);
  if (!g.involves(0) || order(g, 0) != n)
    throw Error(ErrorCode::DegeneratePoint, "vanishing factor has lower order");
  if (!valuationBound(algEval(separant(g, 0), jet)).exact)
    throw Error(ErrorCode::DegeneratePoint, "separant of the vanishing factor vanishes");
  return vanishing.front();
}

// ---------------------------------------------------------------------------
// Printing

std::string defaultVariableName(int var) { return "x" + std::to_string(var + 1); }

namespace {

std::string factorText(VarKey k, int e, const VariableNamer& namer) {
  std::string s = namer(k.var);
  if (k.order <= 3) {
    s += std::string(static_cast<std::size_t>(k.order), '\'');
  } else {
    s += "^(" + std::to_string(k.order) + ")";
  }
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

std::string toText(const DiffPoly& f, const VariableNamer& namer) {
  if (f.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string mono;
    for (const auto& [k, e] : m.factors()) {
      if (!mono.empty()) mono += "*";
      mono += factorText(k, e, namer);
    }
    bool negative = false;
    std::string body;
    if (auto r = c.asRational()) {
      negative = *r < 0;
      Rational mag = abs(*r);
      if (mono.empty()) {
        body = toString(mag);
      } else if (mag == 1) {
        body = mono;
      } else if (isInteger(mag)) {
        body = toString(mag) + "*" + mono;
      } else {
        body = "(" + toString(mag) + ")*" + mono;
      }
    } else {
      body = coefficientText(c, negative);
      if (!mono.empty()) body += "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

}  // namespace dhtk
