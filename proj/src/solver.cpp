#include "dhtk/solver.hpp"

#include <algorithm>
#include <functional>

#include "dhtk/error.hpp"

namespace dhtk {

int DHProblem::order() const { return dhtk::order(f, 0); }

int DHProblem::level() const {
  int level = std::max(f.level(), static_cast<int>(gamma.height()));
  for (const auto& c : jet) level = std::max(level, c.level());
  return level;
}

DHProblem DHProblem::normalized() const {
  if (gamma.isInfinity()) throw Error(ErrorCode::InvalidInput, "gamma must be finite");
  for (const auto& k : f.keys()) {
    if (k.var != 0) throw Error(ErrorCode::InvalidInput, "problem polynomial must be in x1 only");
  }
  const int n = order();
  if (static_cast<int>(jet.size()) != n + 1)
    throw Error(ErrorCode::JetTooShort,
                "jet has " + std::to_string(jet.size()) + " entries, order is " + std::to_string(n));
  const int L = level();
  DHProblem p{f.liftedTo(L).withNumVars(1), {}, gamma.padded(static_cast<std::size_t>(L))};
  for (const auto& c : jet) p.jet.push_back(embed(c, L));
  Jet j = Jet::single(p.jet);
  if (!algEval(p.f, j).isZeroToPrecision())
    throw Error(ErrorCode::NotARoot, "jet is not an algebraic root of f");
  if (!valuationBound(algEval(separant(p.f, 0), j)).exact)
    throw Error(ErrorCode::DegeneratePoint, "separant vanishes at the jet");
  return p;
}

namespace {

// Each derive^i(b) - c_i has positive top valuation and gamma lies in the
// old value group, so the ball condition follows.
bool ballByTopValuation(const Series& b, std::span<const Series> jet, const ValueVec& gamma) {
  if (static_cast<int>(gamma.height()) >= b.level()) return false;
  Series d = b;
  for (std::size_t i = 0; i < jet.size(); ++i) {
    if (i) d = derive(d);
    if (!hasPositiveTopValuation(d - embed(jet[i], b.level()))) return false;
  }
  return true;
}

}  // namespace

DHSolution solveDH(const DHProblem& problem, int terms, const Tower& tower) {
  DHProblem p = problem.normalized();
  const int n = p.order();
  if (terms <= n)
    throw Error(ErrorCode::InsufficientPrecision,
                "need more than " + std::to_string(n) + " terms for an order-" + std::to_string(n) +
                    " problem");
  DHSolution sol;
  sol.point = prolong(p.f, p.jet, terms - 1, tower);
  sol.b = twistedTaylor(sol.point, terms);
  sol.terms = terms;
  sol.residual = valuationBound(diffEval(p.f.liftedTo(sol.b.level()), sol.b));
  sol.ballCheck = ballByTopValuation(sol.b, p.jet, p.gamma);
  return sol;
}

bool checkDL(const DHProblem& problem, const Series& b) {
  DHProblem p = problem.normalized();
  const int L = p.level();
  if (b.level() != L && b.level() != L + 1)
    throw Error(ErrorCode::LevelMismatch, "candidate must live at the problem's stage or the next");
  try {
    Series r = diffEval(p.f.liftedTo(b.level()), b);
    if (!r.isZeroToPrecision()) return false;
    std::vector<Series> jetB{b};
    std::vector<Series> cs;
    for (std::size_t i = 0; i < p.jet.size(); ++i) {
      if (i) jetB.push_back(derive(jetB.back()));
      cs.push_back(embed(p.jet[i], b.level()));
    }
    return inOpenBall(jetB, cs, p.gamma);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IndistinguishableFromZero ||
        e.code() == ErrorCode::InsufficientPrecision)
      throw Error(ErrorCode::UndecidedAtPrecision, e.what());
    throw;
  }
}

ValueVec closeness(const DHProblem& problem, const Series& b) {
  DHProblem p = problem.normalized();
  std::optional<ValueVec> best;
  Series d = b;
  for (std::size_t i = 0; i < p.jet.size(); ++i) {
    if (i) d = derive(d);
    ValueVec v = valuationBound(d - embed(p.jet[i], b.level())).floor;
    if (!best || v < *best) best = v;
  }
  return *best;
}

// ---------------------------------------------------------------------------

namespace {

int leaderOf(const DiffPoly& r) {
  int leader = -1;
  for (const auto& k : r.keys()) leader = std::max(leader, k.var);
  return leader;
}

class AlgebraProlongation {
 public:
  AlgebraProlongation(std::vector<std::optional<DiffPoly>> relationOf,
                      std::vector<std::vector<Series>> jets, int level, const Tower& tower)
      : relationOf_(std::move(relationOf)), jets_(std::move(jets)), level_(level),
        memo_(relationOf_.size()), derived_(relationOf_.size()), sepInv_(relationOf_.size()) {
    for (std::size_t g = 0; g < relationOf_.size(); ++g) {
      if (!relationOf_[g]) continue;
      const DiffPoly& r = *relationOf_[g];
      const int gi = static_cast<int>(g);
      const int n = order(r, gi);
      orders_.emplace(gi, n);
      auto& jet = jets_[g];
      if (static_cast<int>(jet.size()) > n + 1) jet.resize(static_cast<std::size_t>(n + 1));
      if (static_cast<int>(jet.size()) < n) throw Error(ErrorCode::JetTooShort, "jet too short");
      derived_[g].push_back(r);
      if (static_cast<int>(jet.size()) == n) {
        // Only a relation linear in its top derivative fixes the missing entry.
        if (r.degreeIn(VarKey{gi, n}) != 1)
          throw Error(ErrorCode::JetTooShort, "jet misses the top entry of a nonlinear relation");
      }
      for (int j = 0; j <= n; ++j) memoStore(gi, j, j < static_cast<int>(jet.size()) ? &jet[static_cast<std::size_t>(j)] : nullptr);
      Series s = evalWith(separant(r, gi), std::nullopt);
      if (!valuationBound(s).exact)
        throw Error(ErrorCode::DegeneratePoint, "separant of a relation vanishes at the base point");
      sepInv_[g] = inverse(s, tower);
      if (static_cast<int>(jet.size()) == n) {
        Series rest = evalWith(r, VarKey{gi, n});
        memo_[g][static_cast<std::size_t>(n)] = -(rest * *sepInv_[g]);
      }
      if (!evalWith(r, std::nullopt).isZeroToPrecision())
        throw Error(ErrorCode::NotARoot, "base point does not satisfy a relation");
    }
  }

  /// phi(x_g^(j)).
  Series value(int g, int j) {
    auto& row = memo_[static_cast<std::size_t>(g)];
    if (j < static_cast<int>(row.size()) && row[static_cast<std::size_t>(j)])
      return *row[static_cast<std::size_t>(j)];
    Series v = compute(g, j);
    if (static_cast<int>(row.size()) <= j) row.resize(static_cast<std::size_t>(j + 1));
    row[static_cast<std::size_t>(j)] = v;
    return v;
  }

 private:
  void memoStore(int g, int j, const Series* v) {
    auto& row = memo_[static_cast<std::size_t>(g)];
    if (static_cast<int>(row.size()) <= j) row.resize(static_cast<std::size_t>(j + 1));
    if (v) row[static_cast<std::size_t>(j)] = embed(*v, level_);
  }

  Series compute(int g, int j) {
    const auto gs = static_cast<std::size_t>(g);
    if (!relationOf_[gs]) {
      // Free generator: the point whose Taylor image is c_0 + t.
      Series c0 = embed(jets_[gs].front(), level_);
      Series v = deriveN(c0, j);
      if (j == 1) v = v + Series::constant(1, level_);
      return v;
    }
    const int n = orders_.at(g);
    auto& chain = derived_[gs];
    while (static_cast<int>(chain.size()) <= j - n) chain.push_back(ringDerive(chain.back()));
    Series rest = evalWith(chain[static_cast<std::size_t>(j - n)], VarKey{g, j});
    return -(rest * *sepInv_[gs]);
  }

  // Algebraic evaluation of p at the point, with `zeroKey` set to 0.
  Series evalWith(const DiffPoly& p, std::optional<VarKey> zeroKey) {
    std::vector<std::vector<Series>> perVar(relationOf_.size());
    for (const auto& k : p.keys()) {
      auto& vals = perVar[static_cast<std::size_t>(k.var)];
      while (static_cast<int>(vals.size()) <= k.order) vals.push_back(Series::zero(level_));
    }
    for (const auto& k : p.keys()) {
      if (zeroKey && k == *zeroKey) continue;
      perVar[static_cast<std::size_t>(k.var)][static_cast<std::size_t>(k.order)] = value(k.var, k.order);
    }
    return algEval(p, Jet(std::move(perVar)));
  }

  std::vector<std::optional<DiffPoly>> relationOf_;
  std::vector<std::vector<Series>> jets_;
  int level_;
  std::vector<std::vector<std::optional<Series>>> memo_;
  std::vector<std::vector<DiffPoly>> derived_;
  std::vector<std::optional<Series>> sepInv_;
  std::map<int, int> orders_;
};

}  // namespace

AlgebraPoint solveAlgebraPoint(const AlgebraPresentation& algebra, const ValueVec& gamma,
                               int terms, const Tower& tower) {
  if (!algebra.basePoint) throw Error(ErrorCode::InvalidInput, "algebra has no base point");
  if (gamma.isInfinity()) throw Error(ErrorCode::InvalidInput, "gamma must be finite");
  if (terms < 1) throw Error(ErrorCode::InsufficientPrecision, "need at least one term");
  const std::size_t m = algebra.generators.size();
  if (m == 0) throw Error(ErrorCode::InvalidInput, "algebra has no generators");

  int level = static_cast<int>(gamma.height());
  std::vector<std::vector<Series>> jets(m);
  for (std::size_t g = 0; g < m; ++g) {
    auto it = algebra.basePoint->find(algebra.generators[g]);
    if (it == algebra.basePoint->end() || it->second.empty())
      throw Error(ErrorCode::InvalidInput, "base point misses generator " + algebra.generators[g]);
    jets[g] = it->second;
    for (const auto& s : jets[g]) level = std::max(level, s.level());
  }

  std::vector<std::optional<DiffPoly>> relationOf(m);
  std::vector<DiffPoly> relations;
  for (const auto& r : algebra.relations) {
    if (r.numVars() > static_cast<int>(m))
      throw Error(ErrorCode::UnknownVariable, "relation uses an undeclared generator");
    level = std::max(level, r.level());
  }
  for (const auto& r0 : algebra.relations) {
    DiffPoly r = r0.liftedTo(level).withNumVars(static_cast<int>(m));
    int leader = leaderOf(r);
    if (leader < 0) {
      if (!r.isZero()) throw Error(ErrorCode::NotARoot, "nonzero constant relation");
      continue;
    }
    if (relationOf[static_cast<std::size_t>(leader)])
      throw Error(ErrorCode::NonTriangularPresentation,
                  "two relations lead with generator " + algebra.generators[leader]);
    relationOf[static_cast<std::size_t>(leader)] = r;
    relations.push_back(r);
  }

  AlgebraProlongation prolongation(relationOf, jets, level, tower);
  AlgebraPoint point;
  std::vector<Series> images;
  std::vector<Series> base;
  for (std::size_t g = 0; g < m; ++g) {
    std::vector<Series> values;
    for (int j = 0; j < terms; ++j) values.push_back(prolongation.value(static_cast<int>(g), j));
    images.push_back(taylorSeries(values, terms));
    base.push_back(values.front());
    point.images.emplace(algebra.generators[g], images.back());
  }

  point.relationsVanish = std::all_of(relations.begin(), relations.end(), [&](const DiffPoly& r) {
    return diffEval(r.liftedTo(level + 1), images).isZeroToPrecision();
  });
  point.ballCheck = static_cast<int>(gamma.height()) <= level;
  for (std::size_t g = 0; g < m; ++g) {
    point.ballCheck = point.ballCheck && hasPositiveTopValuation(images[g] - embed(base[g], level + 1));
  }
  return point;
}

Tower towerExtend(const Tower& tower, LevelConfig next) { return tower.extended(next); }

}  // namespace dhtk
