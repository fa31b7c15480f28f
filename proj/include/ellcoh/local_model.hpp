#pragma once

// Local chart of the elliptic tangent bundle with intersection number l.
//
// Cohomology of the chart is the free exterior algebra on 2l closed degree-1
// generators: dlog r_1..dlog r_l and dtheta_1..dtheta_l.  Forms are stored as
// sparse maps from generator subsets (bitmasks) to rational coefficients.
// Bit j (0 <= j < l) is dlog r_{j+1}; bit l + j is dtheta_{j+1}.  This fixes
// the total order LOG_R(1..l) < THETA(1..l) used for all signs.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ellcoh/exactq.hpp"

namespace ellcoh::local {

constexpr int kMaxChartNumber = 15;
constexpr int kDefaultVerifyBound = 6;

enum class GeneratorKind { LogR, Theta };

struct Generator {
  GeneratorKind kind;
  int index;  // 1-based
};

using Monomial = std::uint32_t;

/// Multi-index J = (j_1 < ... < j_m), 1-based.
using MultiIndex = std::vector<int>;

class MultiVectorForm {
 public:
  explicit MultiVectorForm(int l);

  static MultiVectorForm one(int l);
  static MultiVectorForm generator(int l, Generator g);
  static MultiVectorForm log_r(int l, int index) { return generator(l, {GeneratorKind::LogR, index}); }
  static MultiVectorForm theta(int l, int index) { return generator(l, {GeneratorKind::Theta, index}); }
  static MultiVectorForm monomial(int l, Monomial m, const Rational& coefficient = Rational(1));

  int chart_number() const { return l_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Degree of a homogeneous form; -1 for zero; throws for mixed degree.
  int degree() const;
  bool is_homogeneous() const;

  Rational coefficient(Monomial m) const;
  void add_term(Monomial m, const Rational& c);

  MultiVectorForm& operator+=(const MultiVectorForm& other);
  MultiVectorForm& operator-=(const MultiVectorForm& other);
  MultiVectorForm& operator*=(const Rational& c);

  friend MultiVectorForm operator+(MultiVectorForm a, const MultiVectorForm& b) { return a += b; }
  friend MultiVectorForm operator-(MultiVectorForm a, const MultiVectorForm& b) { return a -= b; }
  friend MultiVectorForm operator*(const Rational& c, MultiVectorForm a) { return a *= c; }
  friend MultiVectorForm operator-(MultiVectorForm a) { return a *= Rational(-1); }
  friend bool operator==(const MultiVectorForm& a, const MultiVectorForm& b) {
    return a.l_ == b.l_ && a.terms_ == b.terms_;
  }

 private:
  int l_;
  std::map<Monomial, Rational> terms_;  // never holds zero coefficients
};

std::string to_string(const MultiVectorForm& f);

Monomial bit(Generator g, int l);
Monomial log_r_mask(int l);
Monomial theta_mask(int l);
Monomial log_r_mask(const MultiIndex& J);
int popcount(Monomial m);

/// Graded-commutative product.  Throws DIMENSION_MISMATCH if the charts differ.
MultiVectorForm wedge(const MultiVectorForm& a, const MultiVectorForm& b);

/**
 * Coefficient beta with a = dlog r_J ^ beta + (terms without the full dlog r_J
 * factor).  Terms that still carry other LOG_R generators are kept.
 * Throws BAD_MULTI_INDEX for an empty, unordered or out-of-range J.
 */
MultiVectorForm radial_residue(const MultiVectorForm& a, const MultiIndex& J);

/// Image of a form under the local decomposition map: one component per
/// J subset of {1..l}, keyed by the LOG_R mask of J (piece 0 is key 0).
/// Every component lives in the exterior algebra on the THETA generators.
struct DecompositionImage {
  int l = 0;
  std::map<Monomial, MultiVectorForm> pieces;

  const MultiVectorForm& piece(Monomial J) const;
};

DecompositionImage decomposition_map(const MultiVectorForm& a);

/// The 2^l pieces of the target, piece J sitting at degree shift |J|.
struct DecompositionTarget {
  int l = 0;
  std::vector<Monomial> pieces;  // ordered by (|J|, mask)
  BettiVector piece_betti(Monomial J) const;
  BettiVector total_betti() const;
};

DecompositionTarget decomposition_target(int l);

/// Chart complex: C(2l, k) generators in degree k, zero differential.
RationalComplex build_local_complex(int l);

/// Basis of degree-k monomials in canonical (increasing mask) order.
std::vector<Monomial> degree_basis(int l, int k);

/// Matrix of the decomposition map in degree k: columns index degree_basis(l, k),
/// rows run over the target pieces in DecompositionTarget order, each followed
/// by its THETA monomials of degree k - |J| in increasing order.
RationalMatrix decomposition_matrix(int l, int k);

struct DegreeVerdict {
  int degree = 0;
  Dim lhs_dim = 0;
  Dim rhs_dim = 0;
  Dim rank = 0;
  bool injective = false;
  bool surjective = false;
};

struct LocalIsomorphismReport {
  int l = 0;
  std::vector<DegreeVerdict> degrees;
  bool injective = false;
  bool surjective = false;

  bool bijective() const { return injective && surjective; }
  BettiVector lhs_betti() const;
  BettiVector rhs_betti() const;
};

/// Builds the decomposition map degree by degree and checks its rank exactly.
/// Throws BOUND_EXCEEDED when l > bound.
LocalIsomorphismReport verify_local_isomorphism(int l, int bound = kDefaultVerifyBound);

}  // namespace ellcoh::local
