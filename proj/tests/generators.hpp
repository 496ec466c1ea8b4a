#pragma once

#include <random>

#include "helpers.hpp"
#include "pilp/instances.hpp"
#include "pilp/milp.hpp"
#include "pilp/oracle.hpp"

namespace pilp::testing {

/// Random sentence with n <= nmax, m <= mmax, p <= pmax and non-empty Q/Z^p.
/// Q is a box of right-hand sides around A x0 (x0 fractional, so P_b is never
/// empty on Q); with p = 1 the first coordinate of b is tied to an integer z.
inline ForAllExistsInstance random_forall_instance(std::mt19937& rng, long nmax, long mmax, long pmax) {
  while (true) {
    const Eigen::Index n = uniform(rng, 1, nmax);
    const Eigen::Index m = uniform(rng, n + 1, std::max(n + 1, mmax));
    const Eigen::Index p = uniform(rng, 0, pmax);
    RatMatrix a(m, n);
    for (Eigen::Index i = 0; i < m; ++i) a.row(i) = random_row(rng, n, 2);
    if (rank(a) != n) continue;
    ForAllExistsInstance inst{a, Polyhedron(m + p), p};
    RatVector x0(n);
    for (Eigen::Index j = 0; j < n; ++j) x0(j) = Rational(uniform(rng, -8, 8), 4);
    const RatVector centre = a * x0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const RatRowVector e = RatRowVector::Unit(m + p, i);
      const Rational lo = centre(i) + Rational(uniform(rng, 0, 2), uniform(rng, 1, 4));
      inst.q.add(RatRowVector(-e), -lo);
      inst.q.add(e, lo + Rational(uniform(rng, 0, 4), 2));
    }
    if (p == 1) {
      RatRowVector tie = RatRowVector::Zero(m + 1);
      tie(0) = 1;
      tie(m) = -1;
      const Rational shift(uniform(rng, -4, 4), 2);
      inst.q.add(tie, shift + Rational(uniform(rng, 0, 2), 2));
      inst.q.add(RatRowVector(-tie), -shift);
      const RatRowVector z = RatRowVector::Unit(m + 1, m);
      inst.q.add(z, 6);
      inst.q.add(RatRowVector(-z), 6);
    }
    const bool nonempty = p == 0 ? is_feasible(inst.q) : mixed_integer_feasible({inst.q, {m}}).feasible();
    if (nonempty) return inst;
  }
}

/// Grid check over the bounding box of Q (b step `step`); nullopt when the grid is too large.
inline std::optional<oracle::ForAllExistsGrid> bounding_grid(const ForAllExistsInstance& inst, const Rational& step,
                                                             long max_points) {
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols(), p = inst.p;
  oracle::ForAllExistsGrid g{{step, RatVector(m), RatVector(m)}, {IntVector(p), IntVector(p)},
                             {IntVector::Constant(n, Integer(-40)), IntVector::Constant(n, Integer(40))}};
  double points = 1;
  for (Eigen::Index i = 0; i < m + p; ++i) {
    const RatRowVector e = RatRowVector::Unit(m + p, i);
    const LpOutcome lo = lp_optimize(inst.q, e, Sense::Min);
    const LpOutcome hi = lp_optimize(inst.q, e, Sense::Max);
    if (lo.status != LpStatus::Finite || hi.status != LpStatus::Finite) return std::nullopt;
    if (i < m) {
      g.b.lower(i) = lo.value;
      g.b.upper(i) = hi.value;
      points *= ((hi.value - lo.value) / step).to_double() + 1;
    } else {
      g.z.lower(i - m) = lo.value.ceil();
      g.z.upper(i - m) = hi.value.floor();
    }
  }
  if (points > static_cast<double>(max_points)) return std::nullopt;
  return g;
}

}  // namespace pilp::testing
