#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhtk/diffpoly.hpp"
#include "dhtk/series.hpp"
#include "dhtk/value.hpp"

namespace dhtk {

/// An element of L as coordinates over the basis b_1..b_l.
using LElement = std::vector<Series>;

/// How w is computed on L. With a realization each b_i is a series of K's
/// level (possibly with finer ramification) and w is read off Σ a_i b_i.
/// Without one, a level-0 K carries the trivial valuation, and otherwise
/// the basis must be declared separated, giving w = min v(a_i) + w(b_i).
struct ValuedBasis {
  int level = 0;
  std::vector<ValueVec> valuations;
  std::optional<std::vector<Series>> realization;
  /// Known separated bases only (power bases of totally ramified extensions).
  bool declaredSeparated = false;

  std::size_t dim() const { return valuations.size(); }
  /// min_i w(b_i).
  ValueVec epsilon() const;
  /// w(Σ a_i b_i); infinity for zero. Throws IndistinguishableFromZero,
  /// BasisNotDeclaredSeparated.
  ValueVec valuation(const LElement& a) const;
};

/// A finite free K-algebra L with basis b_1..b_l:
///   b_i·b_j = Σ_m c[i][j][m] b_m,   ∂b_i = Σ_m d[i][m] b_m.
struct FiniteFreeAlgebra {
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<Series>>> structure;
  std::vector<std::vector<Series>> derivation;
  LElement unit;
  ValuedBasis basis;

  int dim() const { return static_cast<int>(labels.size()); }
  int level() const { return basis.level; }

  LElement zero() const;
  LElement one() const { return unit; }
  LElement basisElement(int i) const;
  LElement constant(const Series& k) const;
  LElement add(const LElement& a, const LElement& b) const;
  LElement sub(const LElement& a, const LElement& b) const;
  LElement multiply(const LElement& a, const LElement& b) const;
  /// ∂(Σ a_i b_i) = Σ (∂a_i) b_i + a_i ∂b_i.
  LElement derive(const LElement& a) const;
  bool isZero(const LElement& a) const;

  /// Q(i)/Q, basis (1, i), zero derivation, trivial valuation.
  static FiniteFreeAlgebra gaussian();
  /// Q((t^(1/2)))/Q((t)), basis (1, s) with s² = t and ∂s = s/(2t).
  static FiniteFreeAlgebra sqrtT();
};

struct AxiomReport {
  bool associative = false;
  bool commutative = false;
  bool unital = false;
  bool leibniz = false;
  bool all() const { return associative && commutative && unital && leibniz; }
};
AxiomReport checkAxioms(const FiniteFreeAlgebra& alg);

/// A K-space basis with valuations only, for separatedness sampling; the
/// basis (1, 1 + t0) inside Q((t0)) over Q.
ValuedBasis nonSeparatedExample();

// ---------------------------------------------------------------------------
// Descent

/// An L-algebra presented by generators and relations. Relations are
/// DiffPolys in x1..x_g followed by one plain variable per basis label.
struct LPresentation {
  std::vector<std::string> generators;
  std::vector<DiffPoly> relations;
};

struct DescendedRelation {
  DiffPoly poly;
  int relation = 0;
  int coordinate = 0;
};

/// Generators x_k(i) are variable k·l + i of the descended ring.
struct DescendedPresentation {
  std::vector<std::string> generators;
  int dim = 0;
  std::vector<DescendedRelation> relations;

  int numVars() const { return static_cast<int>(generators.size()) * dim; }
  int varOf(int generator, int coordinate) const { return generator * dim + coordinate; }
  /// "x1(2)" style names.
  std::string name(int var) const;
  VariableNamer namer() const;
};

/// λ_i coordinates; the identity on the coordinate representation.
std::vector<Series> coordinates(const LElement& xi);
/// Coordinates of an expression over the basis labels, e.g. "3 + 4*i".
std::vector<Series> coordinates(const FiniteFreeAlgebra& alg, const std::string& expr);

/// Σ_i P_i b_i for a polynomial over L in the generators, as the coordinate
/// polynomials P_i over K.
std::vector<DiffPoly> descendPolynomial(const DiffPoly& f, int numGenerators,
                                        const FiniteFreeAlgebra& alg);
DescendedPresentation descend(const LPresentation& B, const FiniteFreeAlgebra& alg);

/// Jets per original generator: point[k][j] = φ(x_k^(j)) in L.
using LPoint = std::vector<std::vector<LElement>>;
/// Jets per descended variable: point[v][j] = φ̃(x_k(i)^(j)) in K.
using KPoint = std::vector<std::vector<Series>>;

/// r(φ) computed directly in L.
LElement evaluateInL(const DiffPoly& r, const LPoint& point, const FiniteFreeAlgebra& alg);

/// τ(φ̃)(x) = Σ_i φ̃(x(i)) b_i; throws RelationViolated unless φ̃ kills W(B).
LPoint tau(const KPoint& phiTilde, const DescendedPresentation& desc,
           const FiniteFreeAlgebra& alg);
/// φ̃(x(i)) = λ_i(φ(x)); throws RelationViolated unless φ kills B.
KPoint tauInverse(const LPoint& phi, const LPresentation& B, const FiniteFreeAlgebra& alg);

/// δ^W(x_k(i)^(j)) = x_k(i)^(j+1) - Σ_m x_k(m)^(j)·d[m][i].
DiffPoly descentDerivationOf(const DescendedPresentation& desc, const FiniteFreeAlgebra& alg,
                             VarKey var);
/// Extension of a derivation of K to K[vars] sending each variable to image(v).
DiffPoly applyDerivation(const DiffPoly& p, const std::function<DiffPoly(VarKey)>& image);
/// Σ_i δ^W(x(i)^(j)) b_i + x(i)^(j) ∂b_i = Σ_i x(i)^(j+1) b_i for every
/// generator and j <= maxOrder.
bool verifyDescentDerivation(const DescendedPresentation& desc, const FiniteFreeAlgebra& alg,
                             int maxOrder);
/// W(δp) = (δ^W ⊗ id + id ⊗ ∂)(W(p)) for a polynomial p over L.
bool verifyDescentDerivationOn(const DiffPoly& p, int numGenerators,
                               const FiniteFreeAlgebra& alg);

// ---------------------------------------------------------------------------
// Valuation bounds

struct ContinuityWitness {
  ValueVec epsilon;
  std::vector<ValueVec> coordinateValuations;
  bool hypothesis = false;
  ValueVec difference;
  bool conclusion = false;
};

/// Hypothesis v(φ̃(a(i)) - ψ̃(a(i))) > γ - ε for all i; conclusion
/// w(φ(a) - ψ(a)) > γ computed through τ. Throws IndistinguishableFromZero.
ContinuityWitness continuityBound(const FiniteFreeAlgebra& alg, const LElement& phiCoords,
                                  const LElement& psiCoords, const ValueVec& gamma);

struct SeparatedBoundReport {
  ValueVec difference;
  std::vector<ValueVec> coordinateValuations;
  std::vector<bool> holds;
  bool all() const;
};

/// v(φ̃_j - ψ̃_j) >= w(φ - ψ) - w(b_j) for every j. Throws
/// BasisNotDeclaredSeparated.
SeparatedBoundReport separatedLowerBound(const FiniteFreeAlgebra& alg, const LElement& phi,
                                         const LElement& psi);

/// w(Σ a_i b_i) = min_i v(a_i) + w(b_i) on every sample. Necessary only.
bool isSeparatedSample(const ValuedBasis& basis, const std::vector<LElement>& samples);

}  // namespace dhtk
