#pragma once

// Exact linear algebra over Q and cohomology of finite cochain complexes.
//
// Matrices are plain Eigen dense matrices over an exact scalar type; the
// default scalar is a GMP-backed rational from Boost.Multiprecision, whose
// Eigen NumTraits come from <boost/multiprecision/eigen.hpp>.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "ellcoh/error.hpp"

namespace ellcoh {

using Rational = boost::multiprecision::mpq_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalMatrix = Matrix<Rational>;

/// Dimension of a finite-dimensional vector space (or a rank).
using Dim = long;

/**
 * Exact rank by Gaussian elimination.
 *
 * The scalar must model an exact field: equality with zero is taken
 * literally, so floating point scalars give meaningless answers.  Zero
 * entries are skipped when choosing pivots and when updating rows, which
 * keeps sparse inputs (signed permutation matrices in particular) close to
 * quadratic cost.
 */
template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> work = m;
  const Eigen::Index rows = work.rows();
  const Eigen::Index cols = work.cols();
  const Scalar zero(0);

  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    Eigen::Index found = -1;
    for (Eigen::Index r = pivot_row; r < rows; ++r) {
      if (work(r, col) != zero) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    if (found != pivot_row) work.row(found).swap(work.row(pivot_row));

    const Scalar pivot = work(pivot_row, col);
    for (Eigen::Index r = found + 1; r < rows; ++r) {
      if (work(r, col) == zero) continue;
      const Scalar factor = work(r, col) / pivot;
      for (Eigen::Index c = col; c < cols; ++c) {
        if (work(pivot_row, c) != zero) work(r, c) -= factor * work(pivot_row, c);
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != Scalar(0)) return false;
  return true;
}

/// True iff b * a = 0.  Only nonzero entries are multiplied, so the sparse
/// and zero differentials met in practice cost about one pass over each.
template <typename Scalar>
bool composes_to_zero(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const Scalar zero(0);
  std::vector<std::vector<std::pair<Eigen::Index, Scalar>>> b_cols(static_cast<std::size_t>(b.cols()));
  for (Eigen::Index c = 0; c < b.cols(); ++c)
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      if (b(r, c) != zero) b_cols[static_cast<std::size_t>(c)].emplace_back(r, b(r, c));

  std::vector<Scalar> column(static_cast<std::size_t>(b.rows()), zero);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    std::fill(column.begin(), column.end(), zero);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) == zero) continue;
      for (const auto& [r, v] : b_cols[static_cast<std::size_t>(i)]) column[static_cast<std::size_t>(r)] += v * a(i, j);
    }
    for (const auto& x : column)
      if (x != zero) return false;
  }
  return true;
}

enum class FieldTag { Rational, Complex };

constexpr const char* to_string(FieldTag tag) {
  return tag == FieldTag::Rational ? "rational" : "complex";
}

/**
 * Cohomology dimensions by degree, starting at degree 0.
 *
 * Degrees past the end of `dims` are zero.  Equality ignores trailing zeros
 * but not the field tag.
 */
struct BettiVector {
  std::vector<Dim> dims;
  FieldTag field = FieldTag::Rational;

  BettiVector() = default;
  BettiVector(std::vector<Dim> d, FieldTag f = FieldTag::Rational) : dims(std::move(d)), field(f) {}
  BettiVector(std::initializer_list<Dim> d, FieldTag f = FieldTag::Rational) : dims(d), field(f) {}

  Dim operator[](int degree) const {
    if (degree < 0 || static_cast<std::size_t>(degree) >= dims.size()) return 0;
    return dims[static_cast<std::size_t>(degree)];
  }

  /// One past the highest degree with a nonzero entry.
  int support_end() const {
    auto n = dims.size();
    while (n > 0 && dims[n - 1] == 0) --n;
    return static_cast<int>(n);
  }

  /// Highest nonzero degree, or -1 for the zero vector.
  int top_degree() const { return support_end() - 1; }

  BettiVector trimmed() const {
    return {std::vector<Dim>(dims.begin(), dims.begin() + support_end()), field};
  }

  /// Copy padded (or trimmed) to exactly `length` degrees.
  std::vector<Dim> padded(int length) const {
    std::vector<Dim> out(static_cast<std::size_t>(std::max(length, 0)), 0);
    for (int k = 0; k < length; ++k) out[static_cast<std::size_t>(k)] = (*this)[k];
    return out;
  }

  bool is_zero() const { return support_end() == 0; }

  friend bool operator==(const BettiVector& a, const BettiVector& b) {
    return a.field == b.field && a.trimmed().dims == b.trimmed().dims;
  }
};

std::string to_string(const BettiVector& b);

BettiVector direct_sum(const BettiVector& a, const BettiVector& b);
BettiVector shift(const BettiVector& a, int s);
BettiVector scale(const BettiVector& a, Dim factor);
/// Kunneth product: dims of the tensor product of graded spaces.
BettiVector tensor(const BettiVector& a, const BettiVector& b);
Dim euler_char(const BettiVector& a);

/// Betti numbers of the torus T^n, binomial(n, k).
BettiVector torus_betti(int n, FieldTag field = FieldTag::Rational);

Dim binomial(int n, int k);

/**
 * Finite cochain complex V_a -> V_{a+1} -> ... -> V_b over an exact field.
 *
 * `differential(k)` maps the space in degree first_degree()+k to the next
 * one, so it has shape dims[k+1] x dims[k].
 */
template <typename Scalar>
class CochainComplex {
 public:
  CochainComplex(int first_degree, std::vector<Dim> dims, std::vector<Matrix<Scalar>> differentials)
      : first_degree_(first_degree), dims_(std::move(dims)), differentials_(std::move(differentials)) {
    if (first_degree_ < 0)
      throw Error(ErrorCode::NegativeDegree, "cochain complexes start in degree >= 0");
    const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
    if (differentials_.size() != expected)
      throw Error(ErrorCode::DimensionMismatch, "need one differential between each pair of spaces");
    for (std::size_t k = 0; k < differentials_.size(); ++k) {
      const auto& d = differentials_[k];
      if (d.cols() != dims_[k] || d.rows() != dims_[k + 1])
        throw Error(ErrorCode::DimensionMismatch,
                    "differential " + std::to_string(k) + " has shape " + std::to_string(d.rows()) + "x" +
                        std::to_string(d.cols()));
    }
  }

  /// Complex with the given spaces and all differentials zero.
  static CochainComplex zero_differential(int first_degree, std::vector<Dim> dims) {
    std::vector<Matrix<Scalar>> ds;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k)
      ds.push_back(Matrix<Scalar>::Zero(dims[k + 1], dims[k]));
    return CochainComplex(first_degree, std::move(dims), std::move(ds));
  }

  int first_degree() const { return first_degree_; }
  const std::vector<Dim>& dims() const { return dims_; }
  const Matrix<Scalar>& differential(std::size_t k) const { return differentials_.at(k); }
  std::size_t length() const { return dims_.size(); }

  /// d_{k+1} d_k == 0 for every consecutive pair.
  bool squares_to_zero() const {
    for (std::size_t k = 0; k + 1 < differentials_.size(); ++k) {
      if (dims_[k] == 0 || dims_[k + 2] == 0) continue;
      if (!composes_to_zero(differentials_[k], differentials_[k + 1])) return false;
    }
    return true;
  }

 private:
  int first_degree_;
  std::vector<Dim> dims_;
  std::vector<Matrix<Scalar>> differentials_;
};

using RationalComplex = CochainComplex<Rational>;

/// Betti numbers ker d_k / im d_{k-1}; throws COMPLEX_NOT_EXACTABLE when d o d != 0.
template <typename Scalar>
BettiVector cohomology(const CochainComplex<Scalar>& c, FieldTag field = FieldTag::Rational) {
  if (!c.squares_to_zero())
    throw Error(ErrorCode::ComplexNotExactable, "d o d != 0 in input complex");
  const std::size_t n = c.length();
  std::vector<Dim> ranks(n, 0);
  for (std::size_t k = 0; k + 1 < n; ++k) ranks[k] = static_cast<Dim>(rank(c.differential(k)));

  std::vector<Dim> out(static_cast<std::size_t>(c.first_degree()) + n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const Dim incoming = k == 0 ? 0 : ranks[k - 1];
    out[static_cast<std::size_t>(c.first_degree()) + k] = c.dims()[k] - ranks[k] - incoming;
  }
  return {std::move(out), field};
}

/// Alternating sum of the space dimensions, in absolute degrees.
template <typename Scalar>
Dim euler_char(const CochainComplex<Scalar>& c) {
  Dim chi = 0;
  for (std::size_t k = 0; k < c.length(); ++k) {
    const int degree = c.first_degree() + static_cast<int>(k);
    chi += (degree % 2 == 0 ? 1 : -1) * c.dims()[k];
  }
  return chi;
}

}  // namespace ellcoh
