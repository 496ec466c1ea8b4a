#include "pilp/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pilp/errors.hpp"
#include "pilp/lattice_detail.hpp"
#include "pilp/paramwidth.hpp"

namespace pilp {

std::optional<Rational> width_along(const Polyhedron& p, const IntRowVector& c) {
  const Polyhedron closed = p.closure();
  const RatRowVector obj = to_rational(c);
  const LpOutcome hi = lp_optimize(closed, obj, Sense::Max);
  if (hi.status == LpStatus::Infeasible) throw std::domain_error("empty polyhedron");
  if (hi.status == LpStatus::Unbounded) return std::nullopt;
  const LpOutcome lo = lp_optimize(closed, obj, Sense::Min);
  if (lo.status == LpStatus::Unbounded) return std::nullopt;
  return hi.value - lo.value;
}

void for_each_integer_point(const Polyhedron& p, const std::function<bool(const IntVector&)>& visit) {
  if (p.trivially_empty()) return;
  const Eigen::Index n = p.dim();
  if (n == 0) {
    if (is_feasible(p)) visit(IntVector(0));
    return;
  }
  // levels[k] is the projection onto the first k + 1 coordinates.
  std::vector<Polyhedron> levels(static_cast<std::size_t>(n));
  levels[n - 1] = p;
  for (Eigen::Index k = n - 1; k > 0; --k) levels[k - 1] = fm_eliminate(levels[k], k);
  IntVector x(n);
  std::function<bool(Eigen::Index)> descend = [&](Eigen::Index k) -> bool {
    const Polyhedron& level = levels[k];
    if (level.trivially_empty()) return true;
    std::optional<Integer> lo, hi;
    for (const auto& row : level.constraints()) {
      Rational room = row.beta;
      for (Eigen::Index j = 0; j < k; ++j)
        if (!row.a(j).is_zero()) room -= row.a(j) * Rational(x(j));
      const int s = row.a(k).sign();
      if (s == 0) {
        if (room.sign() < 0 || (row.strict && room.sign() == 0)) return true;
        continue;
      }
      const Rational t = room / row.a(k);
      if (s > 0) {
        Integer top = t.floor();
        if (row.strict && Rational(top) == t) top -= 1;
        if (!hi || top < *hi) hi = top;
      } else {
        Integer bottom = t.ceil();
        if (row.strict && Rational(bottom) == t) bottom += 1;
        if (!lo || bottom > *lo) lo = bottom;
      }
    }
    if (!lo || !hi) throw std::domain_error("integer enumeration over an unbounded polyhedron");
    for (Integer v = *lo; v <= *hi; v += 1) {
      x(k) = v;
      if (k + 1 < n) {
        if (!descend(k + 1)) return false;
      } else if (p.contains(to_rational(x))) {
        if (!visit(x)) return false;
      }
    }
    return true;
  };
  descend(0);
}

std::vector<IntVector> extreme_rays(const RatMatrix& g) {
  const Eigen::Index n = g.cols();
  const Eigen::Index m = g.rows();
  std::vector<IntVector> rays;
  std::set<std::string> seen;
  const auto consider = [&](const RatVector& dir) {
    for (int sign : {1, -1}) {
      const RatVector r = dir * Rational(sign);
      const RatVector gr = g * r;
      bool ok = true;
      for (Eigen::Index i = 0; i < m && ok; ++i) ok = gr(i).sign() <= 0;
      if (!ok) continue;
      const IntVector prim = primitive(r.transpose()).transpose();
      std::string key;
      for (Eigen::Index j = 0; j < n; ++j) key += prim(j).str() + ",";
      if (seen.insert(key).second) rays.push_back(prim);
    }
  };
  std::vector<Eigen::Index> subset(static_cast<std::size_t>(n - 1));
  std::function<void(Eigen::Index, Eigen::Index)> choose = [&](Eigen::Index start, Eigen::Index depth) {
    if (depth == n - 1) {
      const RatMatrix k = kernel(select_rows(g, subset));
      if (k.cols() == 1) consider(k.col(0));
      return;
    }
    for (Eigen::Index i = start; i < m; ++i) {
      subset[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  if (n > 0 && m >= n - 1) choose(0, 0);
  return rays;
}

namespace detail {

RatMatrix positive_integral(const RatMatrix& m) { return m * Rational(denominator_lcm(m)); }

RatMatrix pair_cone(const RatMatrix& inv1, const RatMatrix& inv2) {
  const Eigen::Index n = inv1.rows();
  const RatMatrix d1 = positive_integral(RatMatrix(-inv1));
  const RatMatrix d2 = positive_integral(inv2);
  RatMatrix g(2 * n, n);
  g.topRows(n) = d1.transpose();
  g.bottomRows(n) = d2.transpose();
  return g;
}

Polyhedron pair_cone_cut(const RatMatrix& inv1, const RatMatrix& inv2) {
  const Eigen::Index n = inv1.rows();
  const RatMatrix g = pair_cone(inv1, inv2);
  Polyhedron k = Polyhedron::from_system(g, RatVector::Zero(2 * n));
  k.add(g.topRows(n).colwise().sum(), -1);
  return k;
}

std::vector<IntVector> hull_candidates(const Polyhedron& region, const RatMatrix& rec, bool convex) {
  std::vector<IntVector> points;
  for_each_integer_point(region, [&](const IntVector& x) {
    points.push_back(x);
    return true;
  });
  const Eigen::Index n = region.dim();
  if (points.size() < 2 || rank(rec) < n) return points;
  // -sum of the rows is positive on every nonzero recession direction.
  const RatRowVector height = -rec.colwise().sum();
  std::vector<std::pair<Rational, std::size_t>> order;
  for (std::size_t i = 0; i < points.size(); ++i) order.emplace_back((height * to_rational(points[i]))(0), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<IntVector> kept;
  for (const auto& [h, i] : order) {
    const RatVector p = to_rational(points[i]);
    bool dominated = false;
    for (const IntVector& q : kept) {
      const RatVector d = rec * (p - to_rational(q));
      bool inside = true;
      for (Eigen::Index r = 0; r < d.size() && inside; ++r) inside = d(r).sign() <= 0;
      if (inside) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(points[i]);
  }
  if (!convex || kept.size() < 2) return kept;
  std::vector<bool> alive(kept.size(), true);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i && alive[j]) others.push_back(j);
    if (others.empty()) continue;
    // lambda >= 0, sum lambda = 1, rec (p - sum lambda_j q_j) <= 0.
    const Eigen::Index k = static_cast<Eigen::Index>(others.size());
    const Eigen::Index rr = rec.rows();
    RatMatrix a = RatMatrix::Zero(k + 2 + rr, k);
    RatVector b = RatVector::Zero(k + 2 + rr);
    for (Eigen::Index j = 0; j < k; ++j) {
      a(j, j) = -1;
      a(k, j) = 1;
      a(k + 1, j) = -1;
      a.block(k + 2, j, rr, 1) = -(rec * to_rational(kept[others[j]]));
    }
    b(k) = 1;
    b(k + 1) = -1;
    b.tail(rr) = -(rec * to_rational(kept[i]));
    if (find_point(a, b)) alive[i] = false;
  }
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (alive[i]) out.push_back(kept[i]);
  return out;
}

}  // namespace detail

std::vector<IntVector> integer_hull_vertex_superset(const Polyhedron& p, const Integer& bound, HullFilter filter) {
  const Eigen::Index n = p.dim();
  Polyhedron region = p.closure();
  for (Eigen::Index j = 0; j < n; ++j) {
    RatRowVector e = RatRowVector::Zero(n);
    e(j) = 1;
    region.add(e, Rational(bound));
    region.add(RatRowVector(-e), Rational(bound));
  }
  const RatMatrix rec = p.size() == 0 ? RatMatrix(RatMatrix::Zero(0, n)) : p.matrix();
  return detail::hull_candidates(region, rec, filter == HullFilter::ConvexPosition);
}

bool finite_width_test(const RatMatrix& a) {
  const ColumnReduction red = normalize_full_column_rank(a);
  if (red.variable_free()) return false;
  const auto bases = enumerate_bases(red.reduced);
  std::vector<RatMatrix> inverses;
  for (const auto& basis : bases) inverses.push_back(inverse(select_rows(red.reduced, basis)));
  for (std::size_t i = 0; i < inverses.size(); ++i) {
    for (std::size_t j = i + 1; j < inverses.size(); ++j) {
      if (is_feasible(detail::pair_cone_cut(inverses[i], inverses[j]))) return true;
    }
  }
  return false;
}

WidthResult lattice_width(const Polyhedron& p, const Config& config) {
  if (!is_feasible(p.closure())) throw std::domain_error("empty polyhedron");
  const Polyhedron closed = p.closure();
  const Eigen::Index n = p.dim();
  if (closed.size() == 0) return {};
  const ColumnReduction red = normalize_full_column_rank(closed.matrix());
  if (red.variable_free()) return {};
  std::shared_ptr<const TripleList> triples;
  try {
    triples = flat_direction_triples(red.reduced, config);
  } catch (const InfiniteWidthError&) {
    return {};
  }
  const RatVector b = closed.rhs();
  const WidthTriple& best = (*triples)[best_triple(*triples, b)];
  IntRowVector d = IntRowVector::Zero(n);
  d.head(best.c.size()) = best.c;
  const IntRowVector c = d * red.transform.inverse().matrix();
  return {best.width(b), c};
}

namespace {

// Rows i with -a_i in the cone of the rows: they span the directions of finite width.
RatMatrix finite_directions(const RatMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < m; ++i) {
    // u >= 0 with u A = -a_i.
    RatMatrix lhs = RatMatrix::Zero(2 * n + m, m);
    RatVector rhs = RatVector::Zero(2 * n + m);
    lhs.topRows(n) = a.transpose();
    lhs.middleRows(n, n) = -a.transpose();
    rhs.head(n) = -a.row(i).transpose();
    rhs.segment(n, n) = a.row(i).transpose();
    lhs.bottomRows(m) = -RatMatrix::Identity(m, m);
    if (find_point(lhs, rhs)) rows.push_back(i);
  }
  return select_rows(a, rows);
}

// Rows form a basis of span(rows) intersected with Z^n.
IntMatrix saturated_basis(const RatMatrix& span) {
  const Eigen::Index n = span.cols();
  const RatMatrix indep = select_rows(span, independent_rows(span));
  const Eigen::Index k = indep.rows();
  if (k == n) return IntMatrix::Identity(n, n);
  const RatMatrix perp = kernel(indep);  // n x (n - k)
  RatMatrix perp_t = perp.transpose();
  for (Eigen::Index r = 0; r < perp_t.rows(); ++r) perp_t.row(r) = to_rational(primitive(perp_t.row(r)));
  const HermiteForm hnf = hermite_normal_form(to_integer(perp_t));
  return hnf.u.matrix().rightCols(k).transpose();
}

class DirectionSearch {
 public:
  DirectionSearch(const Polyhedron& p, IntMatrix basis) : p_(p), basis_(std::move(basis)) {
    a_ = p.matrix();
    b_ = p.rhs();
  }

  void run(const IntRowVector& start, const Rational& start_width) {
    best_ = start;
    best_width_ = start_width;
    lambda_ = IntRowVector::Zero(basis_.rows());
    descend(0, true);
  }

  const IntRowVector& best() const { return best_; }
  const Rational& best_width() const { return best_width_; }

 private:
  // Variables [lambda (k) | u (m) | v (m)]:
  // u A = lambda B, v A = -lambda B, u, v >= 0, u b + v b <= W, lambda_j fixed for j < level.
  LpOutcome bound(Eigen::Index level, Sense sense) const {
    const Eigen::Index k = basis_.rows();
    const Eigen::Index m = a_.rows();
    const Eigen::Index n = a_.cols();
    const Eigen::Index vars = k + 2 * m;
    const Eigen::Index rows = 4 * n + 2 * m + 1 + 2 * level;
    RatMatrix lhs = RatMatrix::Zero(rows, vars);
    RatVector rhs = RatVector::Zero(rows);
    const RatMatrix bt = to_rational(basis_).transpose();  // n x k
    const RatMatrix at = a_.transpose();                    // n x m
    Eigen::Index r = 0;
    for (int sign : {1, -1}) {
      lhs.block(r, 0, n, k) = -bt * Rational(sign);
      lhs.block(r, k, n, m) = at * Rational(sign);
      r += n;
      lhs.block(r, 0, n, k) = bt * Rational(sign);
      lhs.block(r, k + m, n, m) = at * Rational(sign);
      r += n;
    }
    lhs.block(r, k, 2 * m, 2 * m) = -RatMatrix::Identity(2 * m, 2 * m);
    r += 2 * m;
    lhs.block(r, k, 1, m) = b_.transpose();
    lhs.block(r, k + m, 1, m) = b_.transpose();
    rhs(r++) = best_width_;
    for (Eigen::Index j = 0; j < level; ++j) {
      lhs(r, j) = 1;
      rhs(r++) = Rational(lambda_(j));
      lhs(r, j) = -1;
      rhs(r++) = -Rational(lambda_(j));
    }
    RatRowVector obj = RatRowVector::Zero(vars);
    obj(level) = sense == Sense::Max ? 1 : -1;
    LpOutcome out = solve_lp(lhs, rhs, obj);
    if (out.status == LpStatus::Finite && sense == Sense::Min) out.value = -out.value;
    return out;
  }

  void descend(Eigen::Index level, bool all_zero) {
    const Eigen::Index k = basis_.rows();
    if (level == k) {
      if (all_zero) return;
      const IntRowVector c = lambda_ * basis_;
      const auto w = width_along(p_, c);
      if (w && *w < best_width_) {
        best_width_ = *w;
        best_ = c;
      }
      return;
    }
    const LpOutcome hi = bound(level, Sense::Max);
    if (hi.status != LpStatus::Finite) return;
    const LpOutcome lo = bound(level, Sense::Min);
    Integer from = lo.value.ceil();
    const Integer to = hi.value.floor();
    if (all_zero && from < Integer(0)) from = 0;
    for (Integer v = from; v <= to; v += 1) {
      lambda_(level) = v;
      descend(level + 1, all_zero && v.is_zero());
    }
    lambda_(level) = 0;
  }

  const Polyhedron& p_;
  IntMatrix basis_;
  RatMatrix a_;
  RatVector b_;
  IntRowVector lambda_;
  IntRowVector best_;
  Rational best_width_;
};

}  // namespace

WidthResult lattice_width_direct(const Polyhedron& p) {
  const Polyhedron closed = p.closure();
  if (!is_feasible(closed)) throw std::domain_error("empty polyhedron");
  if (closed.size() == 0) return {};
  const RatMatrix a = closed.matrix();
  const RatMatrix span = finite_directions(a);
  if (span.rows() == 0) return {};
  // Implicit equalities give width zero.
  for (Eigen::Index i = 0; i < span.rows(); ++i) {
    const IntRowVector c = primitive(span.row(i));
    const auto w = width_along(closed, c);
    if (w && w->is_zero()) return {*w, c};
  }
  const IntMatrix basis = saturated_basis(span);
  IntRowVector start;
  Rational start_width;
  const auto offer = [&](const IntRowVector& c) {
    const auto w = width_along(closed, c);
    if (w && (start.size() == 0 || *w < start_width)) {
      start = c;
      start_width = *w;
    }
  };
  for (Eigen::Index i = 0; i < basis.rows(); ++i) offer(basis.row(i));
  for (Eigen::Index i = 0; i < span.rows(); ++i) offer(primitive(span.row(i)));
  DirectionSearch search(closed, basis);
  search.run(start, start_width);
  return {search.best_width(), search.best()};
}

}  // namespace pilp
