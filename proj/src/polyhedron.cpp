#include "pilp/polyhedron.hpp"

#include <functional>
#include <map>

namespace pilp {

namespace {

// Positive rescaling to a primitive integral normal.
LinearConstraint primitive_row(const LinearConstraint& row) {
  const Rational scale(denominator_lcm(row.a));
  IntRowVector ia(row.a.size());
  for (Eigen::Index j = 0; j < row.a.size(); ++j) ia(j) = Integer(row.a(j) * scale);
  const Rational factor = scale / Rational(content(IntMatrix(ia)));
  return {RatRowVector(row.a * factor), row.beta * factor, row.strict};
}

std::vector<Integer> key_of(const RatRowVector& a) {
  std::vector<Integer> key;
  key.reserve(static_cast<std::size_t>(a.size()));
  for (Eigen::Index j = 0; j < a.size(); ++j) key.push_back(Integer(a(j)));
  return key;
}

// Of two rows with the same normal, is `x` at least as tight as `y`?
bool tighter(const LinearConstraint& x, const LinearConstraint& y) {
  if (x.beta != y.beta) return x.beta < y.beta;
  return x.strict || !y.strict;
}

RatRowVector drop_coordinate(const RatRowVector& a, Eigen::Index k) {
  RatRowVector out(a.size() - 1);
  out << a.head(k), a.tail(a.size() - k - 1);
  return out;
}

}  // namespace

bool LinearConstraint::satisfied_by(const RatVector& x) const {
  Rational lhs(0);
  for (Eigen::Index j = 0; j < a.size(); ++j)
    if (!a(j).is_zero()) lhs += a(j) * x(j);
  return strict ? lhs < beta : lhs <= beta;
}

PartiallyOpenPolyhedron::PartiallyOpenPolyhedron(Eigen::Index dim, const std::vector<LinearConstraint>& rows)
    : dim_(dim) {
  for (const auto& r : rows) add(r);
}

PartiallyOpenPolyhedron PartiallyOpenPolyhedron::from_system(const RatMatrix& a, const RatVector& b, bool strict) {
  if (a.rows() != b.size()) throw std::invalid_argument("row count of A and length of b differ");
  PartiallyOpenPolyhedron p(a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) p.add(a.row(i), b(i), strict);
  return p;
}

PartiallyOpenPolyhedron PartiallyOpenPolyhedron::empty(Eigen::Index dim) {
  PartiallyOpenPolyhedron p(dim);
  p.contradiction_ = true;
  return p;
}

void PartiallyOpenPolyhedron::add(const LinearConstraint& row) {
  if (row.a.size() != dim_) throw std::invalid_argument("constraint length differs from dimension");
  if (is_zero(row.a)) {
    const bool holds = row.strict ? Rational(0) < row.beta : Rational(0) <= row.beta;
    if (!holds) contradiction_ = true;
    return;
  }
  rows_.push_back(row);
}

void PartiallyOpenPolyhedron::add_equality(const RatRowVector& a, const Rational& beta) {
  add(a, beta, false);
  add(RatRowVector(-a), -beta, false);
}

void PartiallyOpenPolyhedron::append(const PartiallyOpenPolyhedron& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  if (other.contradiction_) contradiction_ = true;
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

bool PartiallyOpenPolyhedron::has_strict() const {
  for (const auto& r : rows_)
    if (r.strict) return true;
  return false;
}

bool PartiallyOpenPolyhedron::contains(const RatVector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("point dimension differs from polyhedron dimension");
  if (contradiction_) return false;
  for (const auto& r : rows_)
    if (!r.satisfied_by(x)) return false;
  return true;
}

PartiallyOpenPolyhedron PartiallyOpenPolyhedron::closure() const {
  PartiallyOpenPolyhedron p = *this;
  for (auto& r : p.rows_) r.strict = false;
  return p;
}

PartiallyOpenPolyhedron PartiallyOpenPolyhedron::intersect(const PartiallyOpenPolyhedron& other) const {
  PartiallyOpenPolyhedron p = *this;
  p.append(other);
  return p;
}

RatMatrix PartiallyOpenPolyhedron::matrix() const {
  RatMatrix a(static_cast<Eigen::Index>(rows_.size()), dim_);
  for (std::size_t i = 0; i < rows_.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows_[i].a;
  return a;
}

RatVector PartiallyOpenPolyhedron::rhs() const {
  RatVector b(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) b(static_cast<Eigen::Index>(i)) = rows_[i].beta;
  return b;
}

Polyhedron canonicalize(const Polyhedron& p) {
  if (p.trivially_empty()) return Polyhedron::empty(p.dim());
  std::vector<LinearConstraint> kept;
  std::map<std::vector<Integer>, std::size_t> index;
  for (const auto& row : p.constraints()) {
    LinearConstraint r = primitive_row(row);
    auto [it, inserted] = index.emplace(key_of(r.a), kept.size());
    if (inserted) {
      kept.push_back(std::move(r));
    } else if (tighter(r, kept[it->second])) {
      kept[it->second] = std::move(r);
    }
  }
  return Polyhedron(p.dim(), kept);
}

Polyhedron remove_redundant(const Polyhedron& p) {
  if (p.trivially_empty()) return p;
  std::vector<LinearConstraint> rows = p.constraints();
  if (!is_feasible(p)) return Polyhedron::empty(p.dim());
  for (std::size_t i = rows.size(); i-- > 0;) {
    std::vector<LinearConstraint> others;
    others.reserve(rows.size() - 1);
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i) others.push_back(rows[j]);
    const LpOutcome r = lp_optimize(Polyhedron(p.dim(), others), rows[i].a, Sense::Max);
    if (r.status != LpStatus::Finite) continue;
    const bool implied = rows[i].strict ? (r.value < rows[i].beta || (r.value == rows[i].beta && !r.attained))
                                        : r.value <= rows[i].beta;
    if (implied) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return Polyhedron(p.dim(), rows);
}

Polyhedron fm_eliminate(const Polyhedron& p, Eigen::Index k, const FmOptions& options) {
  if (k < 0 || k >= p.dim()) throw std::out_of_range("elimination index out of range");
  Polyhedron out(p.dim() - 1);
  if (p.trivially_empty()) return Polyhedron::empty(p.dim() - 1);
  std::vector<const LinearConstraint*> pos, neg;
  std::vector<LinearConstraint> rows;
  for (const auto& r : p.constraints()) {
    const int s = r.a(k).sign();
    if (s > 0) {
      pos.push_back(&r);
    } else if (s < 0) {
      neg.push_back(&r);
    } else {
      rows.push_back({drop_coordinate(r.a, k), r.beta, r.strict});
    }
  }
  for (const LinearConstraint* u : pos) {
    for (const LinearConstraint* l : neg) {
      const Rational wu = -l->a(k);
      const Rational wl = u->a(k);
      const RatRowVector a = u->a * wu + l->a * wl;
      rows.push_back({drop_coordinate(a, k), u->beta * wu + l->beta * wl, u->strict || l->strict});
    }
  }
  for (auto& r : rows) out.add(r);
  out = canonicalize(out);
  if (options.remove_redundant) out = remove_redundant(out);
  return out;
}

Polyhedron fm_project(const Polyhedron& p, Eigen::Index keep, const FmOptions& options) {
  Polyhedron q = p;
  while (q.dim() > keep) q = fm_eliminate(q, q.dim() - 1, options);
  return q;
}

Polyhedron preimage(const Polyhedron& p, const RatMatrix& m, const RatVector& v) {
  if (m.rows() != p.dim() || v.size() != p.dim()) throw std::invalid_argument("affine map does not match dimension");
  if (p.trivially_empty()) return Polyhedron::empty(m.cols());
  Polyhedron out(m.cols());
  for (const auto& r : p.constraints()) out.add(RatRowVector(r.a * m), r.beta - (r.a * v)(0), r.strict);
  return out;
}

Polyhedron translate(const Polyhedron& p, const RatVector& v) {
  return preimage(p, RatMatrix::Identity(p.dim(), p.dim()), RatVector(-v));
}

Polyhedron scale(const Polyhedron& p, const Rational& alpha) {
  if (alpha.sign() < 0) throw std::invalid_argument("negative scale factor");
  if (alpha.sign() > 0) {
    Polyhedron out(p.dim());
    if (p.trivially_empty()) return Polyhedron::empty(p.dim());
    for (const auto& r : p.constraints()) out.add(r.a, r.beta * alpha, r.strict);
    return out;
  }
  if (!is_feasible(p)) return Polyhedron::empty(p.dim());
  for (Eigen::Index j = 0; j < p.dim(); ++j) {
    RatRowVector e = RatRowVector::Zero(p.dim());
    e(j) = 1;
    if (lp_optimize(p, e, Sense::Max).status != LpStatus::Finite ||
        lp_optimize(p, e, Sense::Min).status != LpStatus::Finite) {
      throw std::domain_error("degenerate scale");
    }
  }
  Polyhedron out(p.dim());
  for (Eigen::Index j = 0; j < p.dim(); ++j) {
    RatRowVector e = RatRowVector::Zero(p.dim());
    e(j) = 1;
    out.add_equality(e, 0);
  }
  return out;
}

RatMatrix select_rows(const RatMatrix& a, const std::vector<Eigen::Index>& rows) {
  RatMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.row(rows[i]);
  return out;
}

RatVector select_rows(const RatVector& b, const std::vector<Eigen::Index>& rows) {
  RatVector out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = b(rows[i]);
  return out;
}

std::vector<std::vector<Eigen::Index>> enumerate_bases(const RatMatrix& a) {
  const Eigen::Index n = a.cols();
  if (rank(a) < n) throw std::domain_error("not full column rank");
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> current;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index start) {
    if (static_cast<Eigen::Index>(current.size()) == n) {
      if (!determinant(select_rows(a, current)).is_zero()) out.push_back(current);
      return;
    }
    for (Eigen::Index i = start; i + (n - static_cast<Eigen::Index>(current.size())) <= a.rows(); ++i) {
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace pilp
