#include "dhtk/taylor.hpp"

#include <algorithm>

#include "dhtk/error.hpp"

namespace dhtk {

ProlongedPoint prolong(const DiffPoly& f, std::span<const Series> jet, int maxOrder,
                       const Tower& tower) {
  for (const auto& k : f.keys()) {
    if (k.var != 0)
      throw Error(ErrorCode::InvalidInput, "prolongation takes a polynomial in x1 only");
  }
  const int n = order(f, 0);
  if (static_cast<int>(jet.size()) < n + 1)
    throw Error(ErrorCode::JetTooShort, "jet needs " + std::to_string(n + 1) + " entries");

  int level = f.level();
  for (int j = 0; j <= n; ++j) level = std::max(level, jet[static_cast<std::size_t>(j)].level());
  DiffPoly g = f.liftedTo(level);

  ProlongedPoint point{g, n, {}};
  for (int j = 0; j <= n; ++j) point.values.push_back(embed(jet[static_cast<std::size_t>(j)], level));

  if (!algEval(g, Jet::single(point.values)).isZeroToPrecision())
    throw Error(ErrorCode::NotARoot, "jet is not an algebraic root of f");
  Series s = algEval(separant(g, 0), Jet::single(point.values));
  if (s.isZeroToPrecision() || !valuationBound(s).exact)
    throw Error(ErrorCode::DegeneratePoint, "separant vanishes at the jet");
  Series sInv = inverse(s, tower);

  // δ^m f is linear in x^(n+m) with coefficient s(f).
  for (int i = n + 1; i <= maxOrder; ++i) {
    g = ringDerive(g);
    std::vector<Series> trial = point.values;
    trial.push_back(Series::zero(level));
    Series rest = algEval(g, Jet::single(std::move(trial)));
    point.values.push_back(-(rest * sInv));
  }
  return point;
}

Series taylorSeries(std::span<const Series> values, int terms) {
  if (terms < 0 || static_cast<int>(values.size()) < terms)
    throw Error(ErrorCode::InsufficientJet,
                "need " + std::to_string(terms) + " values, have " + std::to_string(values.size()));
  const int level = values.empty() ? 0 : values.front().level();
  // derivs[j][k] = ∂^k values[j], needed for j + k < terms.
  std::vector<std::vector<Series>> derivs(static_cast<std::size_t>(terms));
  for (int j = 0; j < terms; ++j) {
    auto& row = derivs[static_cast<std::size_t>(j)];
    row.push_back(embed(values[static_cast<std::size_t>(j)], level));
    for (int k = 1; j + k < terms; ++k) row.push_back(derive(row.back()));
  }
  std::vector<Series::Term> out;
  for (int i = 0; i < terms; ++i) {
    Series sum = Series::zero(level);
    for (int j = 0; j <= i; ++j) {
      Rational c(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(j)));
      if ((i - j) % 2) c = -c;
      sum = sum + scale(derivs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i - j)], c);
    }
    Rational inv = makeRational(Integer(1), factorial(static_cast<unsigned long>(i)));
    out.push_back({Rational(i), scale(sum, inv)});
  }
  return Series::fromTerms(level + 1, std::move(out), Rational(terms));
}

Series twistedTaylor(const ProlongedPoint& point, int terms) {
  return taylorSeries(point.values, terms);
}

std::vector<Series> valueSequence(const ProlongedPoint& point, const DiffPoly& p, int count) {
  DiffPoly g = p.liftedTo(point.level());
  std::vector<Series> out;
  Jet jet = Jet::single(point.values);
  for (int j = 0; j < count; ++j) {
    if (j) g = ringDerive(g);
    if (!g.isConstant() && order(g, 0) >= static_cast<int>(point.values.size()))
      throw Error(ErrorCode::InsufficientJet, "prolonged point is too short");
    out.push_back(algEval(g, jet));
  }
  return out;
}

Series taylorImage(const ProlongedPoint& point, const DiffPoly& p, int terms) {
  return taylorSeries(valueSequence(point, p, terms), terms);
}

bool hasPositiveTopValuation(const Series& d) {
  if (d.level() == 0) return d.scalar() == 0;
  for (const auto& t : d.terms()) {
    if (t.exponent > 0) break;
    if (!t.coeff.isZeroToPrecision()) return false;
  }
  return !d.precOrder() || *d.precOrder() > 0;
}

bool checkValuedTaylor(const ProlongedPoint& point, const Series& alpha) {
  if (point.values.empty()) throw Error(ErrorCode::InsufficientJet, "empty point");
  return hasPositiveTopValuation(alpha - embed(point.values.front(), alpha.level()));
}

}  // namespace dhtk
