#include "dhtk/random.hpp"

#include <algorithm>

#include "dhtk/error.hpp"

namespace dhtk {

namespace {

bool heightAtMost(const Rational& q, long h) {
  return abs(q.get_num()) <= h && q.get_den() <= h;
}

// Every rational coefficient of an exact series has height <= h.
bool seriesHeightAtMost(const Series& s, long h) {
  if (s.level() == 0) return heightAtMost(s.scalar(), h);
  if (s.precOrder()) return false;
  return std::all_of(s.terms().begin(), s.terms().end(),
                     [h](const Series::Term& t) { return seriesHeightAtMost(t.coeff, h); });
}

bool isExactMonomial(const Series& s) {
  if (s.level() == 0) return s.scalar() != 0;
  return !s.precOrder() && s.terms().size() == 1 && isExactMonomial(s.terms().front().coeff);
}

}  // namespace

long Generator::integer(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(engine_);
}

bool Generator::coin(double p) { return std::bernoulli_distribution(p)(engine_); }

Rational Generator::rational(long height, bool allowZero) {
  while (true) {
    Rational q;
    if (height < 2 || coin(0.7)) {
      q = Rational(integer(-height, height));
    } else {
      q = makeRational(integer(-height, height), integer(2, height));
    }
    if (allowZero || q != 0) return q;
  }
}

Series Generator::series(int level, int terms, long height, long ramification, long lo,
                         long span) {
  if (level == 0) return Series(rational(height));
  const int count = static_cast<int>(integer(1, std::max(1, terms)));
  std::vector<Series::Term> out;
  for (int i = 0; i < count; ++i) {
    Rational e = makeRational(lo * ramification + integer(0, span * ramification - 1),
                              ramification);
    out.push_back({e, series(level - 1, std::max(1, terms / 2), height, ramification, lo, span)});
  }
  return Series::fromTerms(level, std::move(out));
}

DiffPoly Generator::diffPoly(int numVars, int maxOrder, int maxDegree, int maxTerms, long height,
                             int level) {
  DiffPoly f(numVars, level);
  const int count = static_cast<int>(integer(1, maxTerms));
  for (int i = 0; i < count; ++i) {
    Monomial m;
    const int degree = static_cast<int>(integer(0, maxDegree));
    for (int d = 0; d < degree; ++d) {
      VarKey k{static_cast<int>(integer(0, numVars - 1)), static_cast<int>(integer(0, maxOrder))};
      m = m * Monomial::of(k);
    }
    Series c = level == 0 ? Series(rational(height, false)) : series(level, 2, height, 1, 0, 3);
    f.addTerm(m, c);
  }
  return f;
}

DHProblem randomDHProblem(Generator& gen, int variant) {
  const int level = variant == 0 ? 0 : 1;
  auto coefficient = [&]() {
    Rational q = gen.rational(10, false);
    if (variant == 2 && gen.coin()) return Series::monomial(Series(q), 1);
    return Series::constant(q, level);
  };
  auto jetEntry = [&]() {
    Rational q = gen.coin(0.8) ? Rational(gen.integer(-2, 2)) : makeRational(gen.integer(-3, 3), 2);
    if (variant == 2 && q != 0 && gen.coin(0.4)) return Series::monomial(Series(q), 1);
    return Series::constant(q, level);
  };

  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int n = static_cast<int>(gen.integer(1, 3));
    DiffPoly f(1, level);
    const int count = static_cast<int>(gen.integer(1, 4));
    for (int i = 0; i < count; ++i) {
      const int degree = static_cast<int>(gen.integer(1, 3));
      Monomial m;
      for (int d = 0; d < degree; ++d) {
        int order = (i == 0 && d == 0) ? n : static_cast<int>(gen.integer(0, n));
        m = m * Monomial::of(VarKey{0, order});
      }
      f.addTerm(m, coefficient());
    }
    std::vector<Series> jet;
    for (int j = 0; j <= n; ++j) jet.push_back(jetEntry());

    Series value = algEval(f, Jet::single(jet));
    if (!seriesHeightAtMost(value, 10)) continue;
    f = f - DiffPoly::constant(value, 1);
    if (order(f, 0) != n) continue;
    Series s = algEval(separant(f, 0), Jet::single(jet));
    if (s.isZeroToPrecision()) continue;
    if (variant == 2 && !isExactMonomial(s)) continue;

    ValueVec gamma = variant == 0 ? ValueVec() : ValueVec({gen.rational(10)});
    return DHProblem{f, jet, gamma};
  }
  throw Error(ErrorCode::InvalidInput, "could not sample a non-degenerate problem");
}

}  // namespace dhtk
