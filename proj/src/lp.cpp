#include <cassert>

#include "pilp/polyhedron.hpp"

namespace pilp {

namespace {

// Dense simplex tableau over the variables [x (free) | slacks | artificial].
// Rows whose basic variable is an x-coordinate are "locked": free variables
// never leave the basis, so those rows take no part in ratio tests.
class Tableau {
 public:
  Tableau(const RatMatrix& a, const RatVector& b)
      : m_(a.rows()), n_(a.cols()), cols_(a.cols() + a.rows() + 1),
        t_(static_cast<std::size_t>(m_ * cols_)), rhs_(m_), obj_(cols_), basis_(m_), locked_(m_, false),
        enterable_(cols_, true) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = 0; j < n_; ++j) at(i, j) = a(i, j);
      at(i, n_ + i) = 1;
      rhs_[i] = b(i);
      basis_[i] = n_ + i;
    }
    enterable_[artificial()] = false;
    for (Eigen::Index j = 0; j < n_; ++j) enterable_[j] = false;
  }

  Eigen::Index artificial() const { return cols_ - 1; }

  // Brings every free variable into the basis; free columns that vanish on all
  // unlocked rows stay nonbasic at zero.
  void pivot_in_free_variables() {
    for (Eigen::Index j = 0; j < n_; ++j) {
      Eigen::Index row = -1;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (!locked_[i] && !at(i, j).is_zero()) {
          row = i;
          break;
        }
      }
      if (row < 0) {
        free_nonbasic_.push_back(j);
        continue;
      }
      pivot(row, j);
      locked_[row] = true;
    }
  }

  // Phase one with a single artificial column; false if A x <= b is infeasible.
  bool make_feasible() {
    Eigen::Index worst = -1;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (!locked_[i] && rhs_[i].sign() < 0 && (worst < 0 || rhs_[i] < rhs_[worst])) worst = i;
    }
    if (worst < 0) return true;
    const Eigen::Index art = artificial();
    for (Eigen::Index i = 0; i < m_; ++i)
      if (!locked_[i]) at(i, art) = -1;
    pivot(worst, art);
    std::vector<Rational> cost(cols_);
    cost[art] = -1;
    enterable_[art] = false;
    set_objective(cost);
    const bool bounded = run();
    assert(bounded);
    (void)bounded;
    if (obj_value_.sign() < 0) return false;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] != art) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = n_; j < art; ++j) {
        if (!at(i, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        locked_[i] = true;  // row reduced to 0 = 0
      }
    }
    for (Eigen::Index i = 0; i < m_; ++i) at(i, art) = 0;
    return true;
  }

  // Phase two; false when unbounded.
  bool maximize(const RatRowVector& c) {
    std::vector<Rational> cost(cols_);
    for (Eigen::Index j = 0; j < n_; ++j) cost[j] = c(j);
    set_objective(cost);
    for (Eigen::Index j : free_nonbasic_)
      if (!obj_[j].is_zero()) return false;
    return run();
  }

  const Rational& value() const { return obj_value_; }

  RatVector point() const {
    RatVector x = RatVector::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) x(basis_[i]) = rhs_[i];
    return x;
  }

 private:
  Rational& at(Eigen::Index i, Eigen::Index j) { return t_[static_cast<std::size_t>(i * cols_ + j)]; }

  void set_objective(const std::vector<Rational>& cost) {
    obj_ = cost;
    obj_value_ = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (Eigen::Index j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) obj_[j] -= cb * at(i, j);
      obj_value_ += cb * rhs_[i];
    }
  }

  // Bland's rule: lowest-index improving column, ratio ties to the lowest basic index.
  bool run() {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (enterable_[j] && obj_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (locked_[i] || at(i, enter).sign() <= 0) continue;
        const Rational ratio = rhs_[i] / at(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index e) {
    const Rational inv = Rational(1) / at(r, e);
    std::vector<Eigen::Index> nz;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (at(r, j).is_zero()) continue;
      at(r, j) *= inv;
      nz.push_back(j);
    }
    rhs_[r] *= inv;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == r || at(i, e).is_zero()) continue;
      const Rational f = at(i, e);
      for (Eigen::Index j : nz) at(i, j) -= f * at(r, j);
      rhs_[i] -= f * rhs_[r];
    }
    if (!obj_[e].is_zero()) {
      const Rational f = obj_[e];
      for (Eigen::Index j : nz) obj_[j] -= f * at(r, j);
      obj_value_ += f * rhs_[r];
    }
    enterable_[basis_[r]] = basis_[r] >= n_ && basis_[r] != artificial();
    basis_[r] = e;
    enterable_[e] = false;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Eigen::Index cols_;
  std::vector<Rational> t_;
  std::vector<Rational> rhs_;
  std::vector<Rational> obj_;
  Rational obj_value_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> locked_;
  std::vector<bool> enterable_;
  std::vector<Eigen::Index> free_nonbasic_;
};

}  // namespace

LpOutcome solve_lp(const RatMatrix& a, const RatVector& b, const RatRowVector& c) {
  Tableau t(a, b);
  t.pivot_in_free_variables();
  LpOutcome out;
  if (!t.make_feasible()) return out;
  if (!t.maximize(c)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Finite;
  out.value = t.value();
  out.attained = true;
  out.point = t.point();
  return out;
}

std::optional<RatVector> find_point(const RatMatrix& a, const RatVector& b) {
  Tableau t(a, b);
  t.pivot_in_free_variables();
  if (!t.make_feasible()) return std::nullopt;
  return t.point();
}

namespace {

// max t subject to strict rows a x + t <= beta, closed rows a x <= beta, t <= 1.
LpOutcome strict_slack_lp(const Polyhedron& p) {
  const Eigen::Index n = p.dim();
  const auto& rows = p.constraints();
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  RatMatrix a = RatMatrix::Zero(m + 1, n + 1);
  RatVector b(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.row(i).head(n) = rows[i].a;
    if (rows[i].strict) a(i, n) = 1;
    b(i) = rows[i].beta;
  }
  a(m, n) = 1;
  b(m) = 1;
  RatRowVector c = RatRowVector::Zero(n + 1);
  c(n) = 1;
  return solve_lp(a, b, c);
}

}  // namespace

std::optional<RatVector> feasible_point(const Polyhedron& p) {
  if (p.trivially_empty()) return std::nullopt;
  if (!p.has_strict()) return find_point(p.matrix(), p.rhs());
  const LpOutcome r = strict_slack_lp(p);
  if (r.status != LpStatus::Finite || r.value.sign() <= 0) return std::nullopt;
  return RatVector(r.point.head(p.dim()));
}

LpOutcome lp_optimize(const Polyhedron& p, const RatRowVector& c, Sense sense) {
  LpOutcome out;
  if (p.trivially_empty()) return out;
  const RatRowVector obj = sense == Sense::Max ? c : RatRowVector(-c);
  if (!p.has_strict()) {
    out = solve_lp(p.matrix(), p.rhs(), obj);
    if (out.status == LpStatus::Finite && sense == Sense::Min) out.value = -out.value;
    return out;
  }
  out = solve_lp(p.matrix(), p.rhs(), obj);
  if (out.status == LpStatus::Infeasible) return out;
  if (out.status == LpStatus::Unbounded) {
    if (!is_feasible(p)) out.status = LpStatus::Infeasible;
    return out;
  }
  Polyhedron face = p;
  face.add_equality(obj, out.value);
  const auto hit = feasible_point(face);
  out.attained = hit.has_value();
  out.point = hit ? *hit : RatVector();
  if (!out.attained && !is_feasible(p)) {
    out = LpOutcome{};
    return out;
  }
  if (sense == Sense::Min) out.value = -out.value;
  return out;
}

}  // namespace pilp
