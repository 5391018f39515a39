#include <algorithm>

#include "dhtk/error.hpp"
#include "dhtk/solver.hpp"

namespace dhtk {

namespace {

using Matrix = std::vector<std::vector<Series>>;

Matrix minor(const Matrix& m, std::size_t row, std::size_t col) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Series> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Laplace expansion; the systems handled here are small.
Series determinant(const Matrix& m, int level) {
  if (m.empty()) return Series::constant(1, level);
  if (m.size() == 1) return m[0][0];
  Series det = Series::zero(level);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[0][j].isExactZero()) continue;
    Series term = m[0][j] * determinant(minor(m, 0, j), level);
    det = (j % 2) ? det - term : det + term;
  }
  return det;
}

Matrix adjugate(const Matrix& m, int level) {
  const std::size_t n = m.size();
  Matrix adj(n, std::vector<Series>(n, Series::zero(level)));
  if (n == 1) {
    adj[0][0] = Series::constant(1, level);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Series c = determinant(minor(m, i, j), level);
      adj[j][i] = ((i + j) % 2) ? -c : c;
    }
  }
  return adj;
}

Series withoutTopMarker(const Series& s) {
  if (s.level() == 0) return s;
  return Series::fromTerms(s.level(), s.terms());
}

}  // namespace

std::optional<Rational> topValuation(const Series& s) {
  if (s.level() == 0) return s.scalar() == 0 ? std::nullopt : std::optional<Rational>(0);
  for (const auto& t : s.terms()) {
    if (!t.coeff.isZeroToPrecision()) return t.exponent;
  }
  return s.precOrder();
}

HenselResult henselLiftSystem(std::span<const DiffPoly> system, std::span<const Series> fixed,
                              std::span<const Series> approx, const Rational& targetPrec,
                              const Tower& tower) {
  const std::size_t m = approx.size();
  if (system.size() != m || m == 0)
    throw Error(ErrorCode::InvalidInput, "system must be square in the lifted variables");
  const std::size_t vars = fixed.size() + m;

  int level = 1;
  for (const auto& f : system) {
    if (f.numVars() > static_cast<int>(vars))
      throw Error(ErrorCode::UnknownVariable, "system uses more variables than supplied");
    for (const auto& k : f.keys()) {
      if (k.order != 0)
        throw Error(ErrorCode::InvalidInput, "hensel lifting takes plain polynomials");
    }
    level = std::max(level, f.level());
  }
  for (const auto& s : fixed) level = std::max(level, s.level());
  for (const auto& s : approx) level = std::max(level, s.level());

  std::vector<DiffPoly> F;
  for (const auto& f : system) F.push_back(f.liftedTo(level).withNumVars(static_cast<int>(vars)));
  std::vector<std::vector<DiffPoly>> partials(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      partials[i].push_back(partial(F[i], VarKey{static_cast<int>(fixed.size() + j), 0}));
  }

  std::vector<Series> point;
  for (const auto& s : fixed) point.push_back(embed(s, level));
  for (const auto& s : approx) point.push_back(withoutTopMarker(embed(s, level)));

  auto jetOf = [&] {
    std::vector<std::vector<Series>> perVar;
    for (const auto& s : point) perVar.push_back({s});
    return Jet(std::move(perVar));
  };

  HenselResult result;
  std::optional<Rational> delta;
  std::optional<Rational> lastRho;
  Rational lastP = targetPrec;
  while (true) {
    Jet jet = jetOf();
    std::vector<Series> residual;
    std::optional<Rational> rho;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
      residual.push_back(algEval(F[i], jet));
      auto v = topValuation(residual.back());
      if (v && (!rho || *v < *rho)) {
        rho = v;
        worst = i;
      }
    }
    result.residualHistory.push_back(rho ? *rho : targetPrec);

    // The Jacobian is checked even when the start point is already a root.
    Matrix J(m, std::vector<Series>());
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) J[i].push_back(algEval(partials[i][j], jet));
    }
    Series det = determinant(J, level);
    if (det.isZeroToPrecision())
      throw Error(ErrorCode::SingularJacobian, "Jacobian determinant vanishes at the point");
    const Rational d = *topValuation(det);
    if (!delta) {
      delta = d;
      result.jacobianValuation = d;
    }

    bool exactRoot = std::all_of(residual.begin(), residual.end(),
                                 [](const Series& r) { return r.isExactZero(); });
    if (exactRoot || *rho >= targetPrec) {
      result.residual = exactRoot ? ValuationBound{ValueVec::infinity(), 0, true}
                                  : valuationBound(residual[worst]);
      for (std::size_t j = 0; j < m; ++j) {
        Series x = point[fixed.size() + j];
        if (!exactRoot) {
          Rational p = *rho - (delta ? *delta : Rational(0));
          if (result.iterations > 0) p = std::min<Rational>(p, lastP);
          x = truncate(x, p);
        }
        result.roots.push_back(std::move(x));
      }
      return result;
    }
    if (lastRho && *rho <= *lastRho)
      throw Error(ErrorCode::PrecisionExhausted,
                  "residual stalled at t^" + toString(*rho) + " before reaching the target");
    if (result.iterations >= 64)
      throw Error(ErrorCode::PrecisionExhausted, "iteration limit reached");

    if (result.iterations == 0 && *rho <= 2 * d)
      throw Error(ErrorCode::DominanceFailure,
                  "residual valuation " + toString(*rho) + " does not exceed 2·" + toString(d));

    const Rational P = std::min<Rational>(2 * *rho - 2 * d, targetPrec);
    Matrix adj = adjugate(J, level);
    std::vector<Series> numer;
    Rational numerLow = P;
    for (std::size_t i = 0; i < m; ++i) {
      Series s = Series::zero(level);
      for (std::size_t j = 0; j < m; ++j) s = s + adj[i][j] * residual[j];
      if (auto v = topValuation(s)) numerLow = std::min<Rational>(numerLow, *v);
      numer.push_back(std::move(s));
    }
    Rational window = std::max<Rational>(P - numerLow + d, 1);
    Series detInv = inverse(det, tower, window);

    Rational reached = P;
    std::vector<Series> steps;
    for (std::size_t i = 0; i < m; ++i) {
      steps.push_back(numer[i] * detInv);
      if (steps.back().precOrder()) reached = std::min<Rational>(reached, *steps.back().precOrder());
    }
    for (std::size_t i = 0; i < m; ++i) {
      Series& x = point[fixed.size() + i];
      x = withoutTopMarker(truncate(x - steps[i], reached));
    }
    lastRho = rho;
    lastP = reached;
    ++result.iterations;
  }
}

}  // namespace dhtk
