#include "pilp/milp.hpp"

#include <stdexcept>

#include "pilp/lattice.hpp"

namespace pilp {

namespace {

struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  bool empty = false;
};

// Range of the last coordinate of `level` once the leading coordinates are fixed to `prefix`.
Interval section_interval(const Polyhedron& level, const RatVector& prefix) {
  Interval out;
  if (level.trivially_empty()) {
    out.empty = true;
    return out;
  }
  const Eigen::Index k = prefix.size();
  for (const auto& row : level.constraints()) {
    Rational room = row.beta;
    for (Eigen::Index j = 0; j < k; ++j)
      if (!row.a(j).is_zero()) room -= row.a(j) * prefix(j);
    const int s = row.a(k).sign();
    if (s == 0) {
      if (room.sign() < 0 || (row.strict && room.sign() == 0)) out.empty = true;
      continue;
    }
    const Rational t = room / row.a(k);
    if (s > 0) {
      if (!out.hi || t < *out.hi || (t == *out.hi && row.strict)) {
        out.hi = t;
        out.hi_strict = row.strict;
      }
    } else if (!out.lo || t > *out.lo || (t == *out.lo && row.strict)) {
      out.lo = t;
      out.lo_strict = row.strict;
    }
  }
  if (out.lo && out.hi &&
      (*out.hi < *out.lo || (*out.hi == *out.lo && (out.lo_strict || out.hi_strict)))) {
    out.empty = true;
  }
  return out;
}

std::optional<Integer> integer_in(const Interval& iv) {
  if (iv.empty) return std::nullopt;
  std::optional<Integer> lo, hi;
  if (iv.lo) {
    lo = iv.lo->ceil();
    if (iv.lo_strict && Rational(*lo) == *iv.lo) *lo += 1;
  }
  if (iv.hi) {
    hi = iv.hi->floor();
    if (iv.hi_strict && Rational(*hi) == *iv.hi) *hi -= 1;
  }
  if (lo && hi) return *lo <= *hi ? lo : std::nullopt;
  if (lo) return lo;
  if (hi) return hi;
  return Integer(0);
}

Rational rational_in(const Interval& iv) {
  if (iv.lo && iv.hi) return *iv.lo == *iv.hi ? *iv.lo : (*iv.lo + *iv.hi) / Rational(2);
  if (iv.lo) return *iv.lo + Rational(1);
  if (iv.hi) return *iv.hi - Rational(1);
  return Rational(0);
}

// Same integer points, closed rows only: primitive integral normals with rounded right-hand sides.
Polyhedron integer_tighten(const Polyhedron& p) {
  const Polyhedron c = canonicalize(p);
  if (c.trivially_empty()) return Polyhedron::empty(p.dim());
  Polyhedron out(p.dim());
  for (const auto& row : c.constraints()) {
    Integer beta = row.beta.floor();
    if (row.strict && Rational(beta) == row.beta) beta -= 1;
    out.add(row.a, Rational(beta));
  }
  return out;
}

// The section {y' : (v, y') in P U} for a unimodular U.
Polyhedron fix_first(const Polyhedron& p, const IntMatrix& u, const Integer& v) {
  const Eigen::Index n = p.dim();
  const RatMatrix ur = to_rational(u);
  Polyhedron out(n - 1);
  for (const auto& row : p.constraints()) {
    const RatRowVector au = row.a * ur;
    out.add(RatRowVector(au.tail(n - 1)), row.beta - au(0) * Rational(v), row.strict);
  }
  return out;
}

IntVector round_nearest(const RatVector& x) {
  IntVector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) out(j) = (x(j) + Rational(1, 2)).floor();
  return out;
}

// Full-dimensional recession cone: walk from x0 along an interior direction
// until the rounding error can no longer leave P.
std::optional<IntVector> recession_point(const Polyhedron& p, const RatVector& x0) {
  const RatMatrix a = p.matrix();
  const Eigen::Index m = a.rows();
  const auto d = find_point(a, RatVector::Constant(m, Rational(-1)));
  if (!d) return std::nullopt;
  Rational t(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    Rational l1(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) l1 += abs(a(i, j));
    const Rational need = l1 / (Rational(2) * -(a.row(i) * *d)(0));
    if (need > t) t = need;
  }
  const IntVector x = round_nearest(x0 + *d * (t + Rational(1)));
  if (!p.contains(to_rational(x))) throw std::logic_error("recession rounding left the polyhedron");
  return x;
}

std::optional<IntRowVector> cheap_direction(const Polyhedron& p) {
  const Eigen::Index n = p.dim();
  std::optional<IntRowVector> best;
  Rational best_width;
  const auto offer = [&](const IntRowVector& c) {
    const auto w = width_along(p, c);
    if (w && (!best || *w < best_width)) {
      best = c;
      best_width = *w;
    }
  };
  for (Eigen::Index j = 0; j < n; ++j) offer(IntRowVector(IntRowVector::Unit(n, j)));
  for (const auto& row : p.constraints()) offer(primitive(row.a));
  return best;
}

std::optional<IntVector> solve(const Polyhedron& input, const Config& config) {
  const Polyhedron p = integer_tighten(input);
  if (p.trivially_empty()) return std::nullopt;
  const Eigen::Index n = p.dim();
  if (n == 0) return IntVector(0);
  if (n == 1) {
    const auto v = integer_in(section_interval(p, RatVector(0)));
    if (!v) return std::nullopt;
    IntVector x(1);
    x(0) = *v;
    return x;
  }
  const auto x0 = feasible_point(p);
  if (!x0) return std::nullopt;
  const IntVector guess = round_nearest(*x0);
  if (p.contains(to_rational(guess))) return guess;

  const bool flat = config.flatness.has(static_cast<int>(n));
  IntRowVector c;
  if (flat) {
    const WidthResult w = lattice_width_direct(p);
    if (w.infinite()) return recession_point(p, *x0);
    c = w.direction;
  } else {
    const auto d = cheap_direction(p);
    if (!d) return recession_point(p, *x0);
    c = *d;
  }
  const RatRowVector cr = to_rational(c);
  const LpOutcome lo = lp_optimize(p, cr, Sense::Min);
  const LpOutcome hi = lp_optimize(p, cr, Sense::Max);
  if (lo.status != LpStatus::Finite || hi.status != LpStatus::Finite) {
    throw std::logic_error("width direction is unbounded");
  }
  const DirectionReduction red = unimodular_for_direction(c);
  if (red.g != Integer(1)) throw std::logic_error("width direction is not primitive");
  const IntMatrix& u = red.u.matrix();
  Integer last = hi.value.floor();
  if (flat) {
    // Slabs past lo + omega(n) are not needed.
    const Integer cap = (lo.value + config.flatness.omega(static_cast<int>(n))).floor();
    if (cap < last) last = cap;
    if (last - lo.value.ceil() + Integer(1) > Integer(config.flatness.slabs(static_cast<int>(n)) + 1)) {
      throw std::logic_error("slab count exceeds the flatness bound");
    }
  }
  for (Integer v = lo.value.ceil(); v <= last; v += 1) {
    const auto sub = solve(fix_first(p, u, v), config);
    if (!sub) continue;
    IntVector y(n);
    y(0) = v;
    y.tail(n - 1) = *sub;
    return IntVector(u * y);
  }
  return std::nullopt;
}

}  // namespace

FeasibilityResult integer_feasible(const Polyhedron& p, const Config& config) {
  FeasibilityResult out;
  const auto x = solve(p, config);
  if (!x) return out;
  const RatVector w = to_rational(*x);
  if (!p.contains(w)) throw std::logic_error("integer witness fails verification");
  out.status = Feasibility::Feasible;
  out.witness = w;
  return out;
}

FeasibilityResult mixed_integer_feasible(const MipProblem& problem, const Config& config) {
  const Polyhedron& p = problem.p;
  const Eigen::Index n = p.dim();
  for (Eigen::Index j : problem.integral) {
    if (j < 0 || j >= n) throw std::invalid_argument("integral index out of range");
  }
  FeasibilityResult out;
  if (problem.integral.empty()) {
    const auto x = feasible_point(p);
    if (!x) return out;
    out.status = Feasibility::Feasible;
    out.witness = *x;
    return out;
  }
  // Reorder to [integral | continuous].
  std::vector<Eigen::Index> order(problem.integral.begin(), problem.integral.end());
  const Eigen::Index k = static_cast<Eigen::Index>(order.size());
  for (Eigen::Index j = 0; j < n; ++j)
    if (!problem.integral.count(j)) order.push_back(j);
  RatMatrix perm = RatMatrix::Zero(n, n);  // x = perm * z
  for (Eigen::Index t = 0; t < n; ++t) perm(order[t], t) = 1;
  const Polyhedron z = preimage(p, perm, RatVector::Zero(n));
  // levels[t] is the projection onto the first t coordinates.
  std::vector<Polyhedron> levels(static_cast<std::size_t>(n + 1));
  levels[n] = z;
  for (Eigen::Index t = n; t > k; --t) {
    FmOptions opts;
    opts.remove_redundant = levels[t].size() > 24;
    levels[t - 1] = fm_eliminate(levels[t], t - 1, opts);
  }
  const FeasibilityResult head = integer_feasible(levels[k], config);
  if (!head.feasible()) return out;
  RatVector sol(n);
  sol.head(k) = head.witness;
  for (Eigen::Index t = k; t < n; ++t) {
    const Interval iv = section_interval(levels[t + 1], RatVector(sol.head(t)));
    if (iv.empty) throw std::logic_error("projection lift failed");
    sol(t) = rational_in(iv);
  }
  const RatVector x = perm * sol;
  if (!p.contains(x)) throw std::logic_error("mixed witness fails verification");
  out.status = Feasibility::Feasible;
  out.witness = x;
  return out;
}

}  // namespace pilp
