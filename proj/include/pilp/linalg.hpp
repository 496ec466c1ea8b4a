#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pilp/rational.hpp"

namespace pilp {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;
using RatRowVector = RowVector<Rational>;
using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using IntRowVector = RowVector<Integer>;

namespace detail {
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
inline Integer exact_quotient(const Integer& a, const Integer& b) { return exact_div(a, b); }
}  // namespace detail

/// Fraction-free (Bareiss) determinant. Every intermediate division is exact,
/// so the routine works unchanged over Integer and Rational.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> m = input;
  Scalar previous(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == Scalar(0)) ++swap;
      if (swap == n) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = detail::exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), previous);
      }
    }
    previous = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Scalar(-m(n - 1, n - 1));
}

template <typename Derived>
bool is_integral(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

/// Converts a rational matrix with integral entries; throws std::domain_error otherwise.
IntMatrix to_integer(const RatMatrix& m);
inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

/// Least common multiple of all denominators (1 for an empty matrix).
Integer denominator_lcm(const RatMatrix& m);
/// Greatest common divisor of all entries (0 for the zero vector).
Integer content(const IntMatrix& m);
/// Scales a nonzero rational vector by a positive factor so that it becomes
/// integral with coprime entries.
IntRowVector primitive(const RatRowVector& v);

/// Rank via exact Gaussian elimination.
Eigen::Index rank(const RatMatrix& m);
/// Inverse of a non-singular square matrix; std::domain_error if singular.
RatMatrix inverse(const RatMatrix& m);
/// Columns form a basis of the right kernel {x : m x = 0}.
RatMatrix kernel(const RatMatrix& m);
/// Indices of a maximal set of linearly independent rows (greedy, in order).
std::vector<Eigen::Index> independent_rows(const RatMatrix& m);

struct GcdExt {
  Integer g;
  Integer u;
  Integer v;
};

/// Extended Euclid: g = gcd(a, b) >= 0 and u*a + v*b = g. gcd(0, 0) = 0 with u = v = 0.
GcdExt gcd_ext(const Integer& a, const Integer& b);

/// Square integral matrix with |det| = 1, checked on construction.
class UnimodularMatrix {
 public:
  UnimodularMatrix() = default;
  explicit UnimodularMatrix(IntMatrix entries);
  static UnimodularMatrix identity(Eigen::Index n);

  const IntMatrix& matrix() const { return m_; }
  RatMatrix rational() const { return to_rational(m_); }
  Eigen::Index size() const { return m_.rows(); }
  UnimodularMatrix inverse() const;

  friend UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b) {
    return UnimodularMatrix(IntMatrix(a.m_ * b.m_));
  }
  friend bool operator==(const UnimodularMatrix& a, const UnimodularMatrix& b) { return a.m_ == b.m_; }

 private:
  IntMatrix m_;
};

struct HermiteForm {
  IntMatrix h;          ///< square, upper-triangular, h(i,i) > h(i,j) >= 0 for j > i
  UnimodularMatrix u;   ///< a * u == [h | 0]
};

/// Column-style Hermite normal form of an integral matrix of full row rank.
/// Rows are processed bottom-up with extended-gcd column operations; entries
/// right of each pivot are reduced modulo the pivot as soon as it is fixed.
HermiteForm hermite_normal_form(const IntMatrix& a);
HermiteForm hermite_normal_form(const RatMatrix& a);

struct DirectionReduction {
  Integer g;           ///< gcd of the components
  UnimodularMatrix u;  ///< c * u == g * e1
};

DirectionReduction unimodular_for_direction(const IntRowVector& c);

/// a * transform == [reduced | 0] with `reduced` of full column rank.
struct ColumnReduction {
  RatMatrix reduced;
  UnimodularMatrix transform;
  Eigen::Index dropped = 0;
  /// Zero input matrix: no variable survives and `reduced` has no columns.
  bool variable_free() const { return reduced.cols() == 0; }
};

ColumnReduction normalize_full_column_rank(const RatMatrix& a);

/// Closest rational with denominator at most `max_den`; ties go to the
/// smaller denominator (then to the smaller value).
Rational rational_reconstruct(const Rational& x, const Integer& max_den);

/// Bit sizes as used in the complexity bounds: size(vector) = n + sum size(a_i).
long size_of(const RatVector& v);
long size_of(const RatMatrix& m);
/// Maximum size of a column of m.
long max_column_size(const RatMatrix& m);

}  // namespace pilp
