#pragma once

#include <optional>
#include <vector>

#include "pilp/linalg.hpp"

namespace pilp {

struct LinearConstraint {
  RatRowVector a;
  Rational beta;
  bool strict = false;

  bool satisfied_by(const RatVector& x) const;
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

/// Intersection of finitely many closed (a x <= beta) and open (a x < beta)
/// half-spaces. Rows with a = 0 are resolved on insertion: always-true rows
/// are dropped, an always-false row marks the set as empty.
class PartiallyOpenPolyhedron {
 public:
  PartiallyOpenPolyhedron() = default;
  explicit PartiallyOpenPolyhedron(Eigen::Index dim) : dim_(dim) {}
  PartiallyOpenPolyhedron(Eigen::Index dim, const std::vector<LinearConstraint>& rows);
  /// {x : A x <= b}, every row closed (or every row strict).
  static PartiallyOpenPolyhedron from_system(const RatMatrix& a, const RatVector& b, bool strict = false);
  /// Canonical empty set in the given dimension.
  static PartiallyOpenPolyhedron empty(Eigen::Index dim);

  void add(const LinearConstraint& row);
  void add(const RatRowVector& a, const Rational& beta, bool strict = false) { add({a, beta, strict}); }
  /// a x = beta as a pair of closed rows.
  void add_equality(const RatRowVector& a, const Rational& beta);
  void append(const PartiallyOpenPolyhedron& other);

  Eigen::Index dim() const { return dim_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  /// True when a constant-false row was inserted.
  bool trivially_empty() const { return contradiction_; }
  bool has_strict() const;

  bool contains(const RatVector& x) const;
  PartiallyOpenPolyhedron closure() const;
  PartiallyOpenPolyhedron intersect(const PartiallyOpenPolyhedron& other) const;
  /// Constraint matrix / right-hand side of the current rows.
  RatMatrix matrix() const;
  RatVector rhs() const;

  friend bool operator==(const PartiallyOpenPolyhedron&, const PartiallyOpenPolyhedron&) = default;

 private:
  Eigen::Index dim_ = 0;
  std::vector<LinearConstraint> rows_;
  bool contradiction_ = false;
};

using Polyhedron = PartiallyOpenPolyhedron;

// ---------------------------------------------------------------------------
// Linear programming

enum class LpStatus { Infeasible, Unbounded, Finite };
enum class Sense { Max, Min };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  bool attained = false;
  RatVector point;
};

/// Closed LP max c x s.t. A x <= b, x free; exact simplex with Bland's rule.
/// On Finite the optimum is always attained and `point` is a basic optimum.
LpOutcome solve_lp(const RatMatrix& a, const RatVector& b, const RatRowVector& c);

/// Some x with A x <= b, if any.
std::optional<RatVector> find_point(const RatMatrix& a, const RatVector& b);

/// Rational point of P (strict rows respected), if any.
std::optional<RatVector> feasible_point(const Polyhedron& p);
inline bool is_feasible(const Polyhedron& p) { return feasible_point(p).has_value(); }

/// Supremum (or infimum) of c x over P with attainment semantics for strict rows.
LpOutcome lp_optimize(const Polyhedron& p, const RatRowVector& c, Sense sense);

// ---------------------------------------------------------------------------
// Transformations

struct FmOptions {
  /// Drop rows implied by the others (one LP per row).
  bool remove_redundant = false;
};

/// Projection of P along coordinate k (removes the coordinate).
Polyhedron fm_eliminate(const Polyhedron& p, Eigen::Index k, const FmOptions& options = {});
/// Projection onto the first `keep` coordinates, eliminating the rest from the last one down.
Polyhedron fm_project(const Polyhedron& p, Eigen::Index keep, const FmOptions& options = {});
/// Removes rows implied by the remaining ones.
Polyhedron remove_redundant(const Polyhedron& p);

/// Scales every row to primitive integral form and drops duplicate normals,
/// keeping the tighter right-hand side (strict wins a tie).
Polyhedron canonicalize(const Polyhedron& p);

Polyhedron translate(const Polyhedron& p, const RatVector& v);
/// alpha * P; alpha = 0 gives {0} for bounded non-empty P, error "degenerate scale" if P is unbounded.
Polyhedron scale(const Polyhedron& p, const Rational& alpha);
/// {y : M y + v in P}.
Polyhedron preimage(const Polyhedron& p, const RatMatrix& m, const RatVector& v);

/// All row index sets N (size n, lexicographic) with A_N non-singular.
std::vector<std::vector<Eigen::Index>> enumerate_bases(const RatMatrix& a);

/// Rows of A indexed by N.
RatMatrix select_rows(const RatMatrix& a, const std::vector<Eigen::Index>& rows);
RatVector select_rows(const RatVector& b, const std::vector<Eigen::Index>& rows);

}  // namespace pilp
