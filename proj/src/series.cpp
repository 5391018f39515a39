#include "dhtk/series.hpp"

#include <algorithm>
#include <map>

#include "dhtk/error.hpp"

namespace dhtk {

// ---------------------------------------------------------------------------
// Tower

Tower::Tower(std::vector<LevelConfig> levels) : levels_(std::move(levels)) {
  for (const auto& l : levels_) {
    if (l.ramification < 1 || l.terms < 1)
      throw Error(ErrorCode::InvalidInput,
                  "ramification and precision must be positive");
  }
}

Tower Tower::uniform(std::size_t height, long ramification, long terms) {
  return Tower(std::vector<LevelConfig>(height, LevelConfig{ramification, terms}));
}

LevelConfig Tower::config(std::size_t index) const {
  return index < levels_.size() ? levels_[index] : LevelConfig{};
}

Tower Tower::extended(LevelConfig next) const {
  auto levels = levels_;
  levels.push_back(next);
  return Tower(std::move(levels));
}

Rational Tower::window(int level) const {
  if (level < 1) return Rational(0);
  auto c = config(static_cast<std::size_t>(level - 1));
  return makeRational(c.terms, c.ramification);
}

// ---------------------------------------------------------------------------
// Construction and normal form

Series::Series() = default;

Series::Series(const Rational& q) : scalar_(q) {}

Series::Series(long q) : scalar_(q) {}

Series Series::zero(int level) {
  Series s;
  s.level_ = level;
  return s;
}

Series Series::constant(const Rational& q, int level) {
  return embed(Series(q), level);
}

Series Series::variable(int index, int level, const Rational& exponent) {
  if (index < 0 || index >= level)
    throw Error(ErrorCode::LevelMismatch,
                "t" + std::to_string(index) + " does not exist at level " +
                    std::to_string(level));
  return embed(monomial(Series::constant(1, index), exponent), level);
}

Series Series::monomial(const Series& coeff, const Rational& exponent) {
  return fromTerms(coeff.level() + 1, {Term{exponent, coeff}});
}

Series Series::bigO(const Rational& prec, int level) {
  if (level < 1)
    throw Error(ErrorCode::LevelMismatch, "O() needs a series level");
  Series s = zero(level);
  s.prec_ = prec;
  return s;
}

Series Series::fromTerms(int level, std::vector<Term> terms,
                         std::optional<Rational> precOrder) {
  if (level < 1) throw Error(ErrorCode::LevelMismatch, "terms need level >= 1");
  for (const auto& t : terms) {
    if (t.coeff.level() != level - 1)
      throw Error(ErrorCode::LevelMismatch, "coefficient level mismatch");
  }
  Series s = zero(level);
  s.terms_ = std::move(terms);
  s.prec_ = std::move(precOrder);
  s.normalize();
  return s;
}

void Series::normalize() {
  if (level_ == 0) return;
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (prec_ && t.exponent >= *prec_) continue;
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff = merged.back().coeff + t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.isExactZero(); });
  terms_ = std::move(merged);
}

bool Series::isExactZero() const {
  if (level_ == 0) return scalar_ == 0;
  return terms_.empty() && !prec_;
}

bool Series::isZeroToPrecision() const {
  if (level_ == 0) return scalar_ == 0;
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.isZeroToPrecision(); });
}

bool Series::isExact() const {
  if (level_ == 0) return true;
  if (prec_) return false;
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.isExact(); });
}

std::optional<Rational> Series::asRational() const {
  if (level_ == 0) return scalar_;
  if (prec_) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1 || terms_[0].exponent != 0) return std::nullopt;
  return terms_[0].coeff.asRational();
}

Series Series::coefficient(const Rational& exponent) const {
  if (level_ == 0) throw Error(ErrorCode::LevelMismatch, "rational has no coefficients");
  if (prec_ && exponent >= *prec_)
    throw Error(ErrorCode::InsufficientPrecision,
                "coefficient of t^" + toString(exponent) + " is beyond precision");
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coeff;
  }
  return zero(level_ - 1);
}

std::optional<Rational> Series::lowestExponent() const {
  if (level_ == 0) return scalar_ == 0 ? std::nullopt : std::optional(Rational(0));
  if (!terms_.empty()) return terms_.front().exponent;
  return prec_;
}

bool operator==(const Series& a, const Series& b) {
  if (a.level_ != b.level_) return false;
  if (a.level_ == 0) return a.scalar_ == b.scalar_;
  if (a.prec_ != b.prec_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent ||
        !(a.terms_[i].coeff == b.terms_[i].coeff))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ring operations

namespace {

void requireSameLevel(const Series& a, const Series& b) {
  if (a.level() != b.level())
    throw Error(ErrorCode::LevelMismatch,
                "operands at levels " + std::to_string(a.level()) + " and " +
                    std::to_string(b.level()));
}

std::optional<Rational> minPrec(const std::optional<Rational>& a,
                                const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
  requireSameLevel(a, b);
  if (a.level() == 0) return Series(a.scalar() + b.scalar());
  std::vector<Series::Term> terms;
  terms.reserve(a.terms().size() + b.terms().size());
  terms.insert(terms.end(), a.terms().begin(), a.terms().end());
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Series::fromTerms(a.level(), std::move(terms),
                           minPrec(a.precOrder(), b.precOrder()));
}

Series operator-(const Series& a) {
  if (a.level() == 0) return Series(-a.scalar());
  std::vector<Series::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.exponent, -t.coeff});
  return Series::fromTerms(a.level(), std::move(terms), a.precOrder());
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  requireSameLevel(a, b);
  if (a.level() == 0) return Series(a.scalar() * b.scalar());
  if (a.isExactZero() || b.isExactZero()) return Series::zero(a.level());
  // lowestExponent is a valid lower bound for the top valuation of each
  // factor, so the product is known strictly below prec.
  std::optional<Rational> prec;
  if (b.precOrder()) prec = minPrec(prec, *a.lowestExponent() + *b.precOrder());
  if (a.precOrder()) prec = minPrec(prec, *b.lowestExponent() + *a.precOrder());

  std::map<Rational, Series> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      Rational e = x.exponent + y.exponent;
      if (prec && e >= *prec) break;
      Series c = x.coeff * y.coeff;
      auto it = acc.find(e);
      if (it == acc.end()) {
        acc.emplace(std::move(e), std::move(c));
      } else {
        it->second = it->second + c;
      }
    }
  }
  std::vector<Series::Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) terms.push_back({e, std::move(c)});
  return Series::fromTerms(a.level(), std::move(terms), prec);
}

Series scale(const Series& a, const Rational& q) {
  if (a.level() == 0) return Series(a.scalar() * q);
  if (q == 0) return Series::zero(a.level());
  std::vector<Series::Term> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.exponent, scale(t.coeff, q)});
  return Series::fromTerms(a.level(), std::move(terms), a.precOrder());
}

Series power(const Series& a, long exponent, const Tower& tower) {
  if (exponent < 0) return power(inverse(a, tower), -exponent, tower);
  Series result = Series::constant(1, a.level());
  Series base = a;
  auto e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Series truncate(const Series& a, const Rational& prec) {
  if (a.level() == 0) return a;
  std::vector<Series::Term> terms;
  for (const auto& t : a.terms()) {
    if (t.exponent < prec) terms.push_back(t);
  }
  return Series::fromTerms(a.level(), std::move(terms),
                           minPrec(a.precOrder(), prec));
}

Series inverse(const Series& b, const Tower& tower, std::optional<Rational> relWindow) {
  if (b.level() == 0) {
    if (b.scalar() == 0)
      throw Error(ErrorCode::DivisionByIndistinguishableZero, "division by zero");
    return Series(1 / b.scalar());
  }
  if (b.terms().empty() || !valuationBound(b.terms().front().coeff).exact)
    throw Error(ErrorCode::DivisionByIndistinguishableZero,
                "divisor has no known nonzero leading coefficient");
  const auto& lead = b.terms().front();
  Series leadInv = inverse(lead.coeff, tower);
  if (b.terms().size() == 1 && !b.precOrder())
    return Series::monomial(leadInv, -lead.exponent);

  Rational window = relWindow.value_or(tower.window(b.level()));
  if (b.precOrder()) window = std::min<Rational>(window, *b.precOrder() - lead.exponent);

  // b = lead·t^e·(1 + u) with u of strictly positive top valuation.
  std::vector<Series::Term> rest;
  for (std::size_t i = 1; i < b.terms().size(); ++i) {
    const auto& t = b.terms()[i];
    rest.push_back({t.exponent - lead.exponent, t.coeff * leadInv});
  }
  std::optional<Rational> uPrec;
  if (b.precOrder()) uPrec = *b.precOrder() - lead.exponent;
  Series negU = truncate(-Series::fromTerms(b.level(), std::move(rest), uPrec), window);

  Series one = Series::constant(1, b.level());
  Series sum = one;
  Series term = one;
  while (true) {
    term = truncate(term * negU, window);
    sum = sum + term;
    if (term.terms().empty()) break;
  }
  sum = truncate(sum, window);
  return Series::monomial(leadInv, -lead.exponent) * sum;
}

Series divide(const Series& a, const Series& b, const Tower& tower) {
  requireSameLevel(a, b);
  return a * inverse(b, tower);
}

// ---------------------------------------------------------------------------
// Derivation and embedding

Series derive(const Series& a) {
  if (a.level() == 0) return Series(0);
  std::vector<Series::Term> terms;
  terms.reserve(2 * a.terms().size());
  for (const auto& t : a.terms()) {
    if (a.level() > 1) terms.push_back({t.exponent, derive(t.coeff)});
    if (t.exponent != 0) terms.push_back({t.exponent - 1, scale(t.coeff, t.exponent)});
  }
  std::optional<Rational> prec;
  if (a.precOrder()) prec = *a.precOrder() - 1;
  return Series::fromTerms(a.level(), std::move(terms), prec);
}

Series deriveN(const Series& a, int times) {
  Series r = a;
  for (int i = 0; i < times; ++i) r = derive(r);
  return r;
}

Series embed(const Series& a, int level) {
  if (level < a.level())
    throw Error(ErrorCode::LevelMismatch, "cannot embed into a lower level");
  Series r = a;
  while (r.level() < level) {
    r = r.isExactZero() ? Series::zero(r.level() + 1) : Series::monomial(r, 0);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Valuation, residue, angular component

ValuationBound valuationBound(const Series& a) {
  if (a.isExactZero()) return {ValueVec::infinity(), 0, true};
  if (a.level() == 0) return {ValueVec(), 0, true};
  const auto h = static_cast<std::size_t>(a.level());
  if (a.terms().empty()) {
    std::vector<Rational> c(h, Rational(0));
    c.back() = *a.precOrder();
    return {ValueVec(std::move(c)), h - 1, false};
  }
  const auto& lead = a.terms().front();
  ValuationBound inner = valuationBound(lead.coeff);
  std::vector<Rational> c = inner.floor.padded(h - 1).coords();
  c.push_back(lead.exponent);
  return {ValueVec(std::move(c)), inner.unboundedBelow, inner.exact};
}

ValueVec valuation(const Series& a) {
  auto b = valuationBound(a);
  if (!b.exact)
    throw Error(ErrorCode::IndistinguishableFromZero,
                "valuation undetermined at available precision: " + b.toString());
  return b.floor;
}

Series residue(const Series& a) {
  if (a.level() == 0) throw Error(ErrorCode::LevelMismatch, "residue needs level >= 1");
  for (const auto& t : a.terms()) {
    if (t.exponent >= 0) break;
    if (valuationBound(t.coeff).exact)
      throw Error(ErrorCode::NegativeValuation, "element has negative valuation");
    throw Error(ErrorCode::IndistinguishableFromZero,
                "sign of the top valuation is undetermined");
  }
  if (a.precOrder() && *a.precOrder() <= 0)
    throw Error(ErrorCode::IndistinguishableFromZero, "constant term is unknown");
  return a.coefficient(0);
}

Series angularComponent(const Series& a) {
  if (a.level() == 0) throw Error(ErrorCode::LevelMismatch, "ac needs level >= 1");
  if (a.isExactZero()) return Series::zero(a.level() - 1);
  if (a.terms().empty() || !valuationBound(a.terms().front().coeff).exact)
    throw Error(ErrorCode::IndistinguishableFromZero,
                "leading coefficient undetermined at available precision");
  return a.terms().front().coeff;
}

Series residueSection(const Series& c) {
  return c.isExactZero() ? Series::zero(c.level() + 1) : Series::monomial(c, 0);
}

bool inOpenBall(std::span<const Series> xs, std::span<const Series> cs,
                const ValueVec& gamma) {
  if (xs.size() != cs.size())
    throw Error(ErrorCode::InvalidInput, "ball test needs tuples of equal length");
  bool undecided = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int level = std::max(xs[i].level(), cs[i].level());
    auto verdict =
        valuationBound(embed(xs[i], level) - embed(cs[i], level)).exceeds(gamma);
    if (!verdict) {
      undecided = true;
    } else if (!*verdict) {
      return false;
    }
  }
  if (undecided)
    throw Error(ErrorCode::IndistinguishableFromZero,
                "ball membership undetermined at available precision");
  return true;
}

bool conformsTo(const Series& a, const Tower& tower) {
  if (a.level() == 0) return true;
  auto d = tower.config(static_cast<std::size_t>(a.level() - 1)).ramification;
  auto onLattice = [d](const Rational& e) {
    Rational scaled = e * d;
    return isInteger(scaled);
  };
  if (a.precOrder() && !onLattice(*a.precOrder())) return false;
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const Series::Term& t) {
    return onLattice(t.exponent) && conformsTo(t.coeff, tower);
  });
}

}  // namespace dhtk
