#include "pilp/oracle.hpp"

#include <functional>
#include <stdexcept>

namespace pilp::oracle {

namespace {

// Odometer over the integral points of a box.
void for_each_in_box(const Box& box, const std::function<bool(const IntVector&)>& visit) {
  const Eigen::Index n = box.lower.size();
  for (Eigen::Index j = 0; j < n; ++j)
    if (box.upper(j) < box.lower(j)) return;
  IntVector x = box.lower;
  while (true) {
    if (!visit(x)) return;
    Eigen::Index j = 0;
    while (j < n && x(j) == box.upper(j)) {
      x(j) = box.lower(j);
      ++j;
    }
    if (j == n) return;
    x(j) += 1;
  }
}

void for_each_grid_point(const Grid& grid, const std::function<bool(const RatVector&)>& visit) {
  const Eigen::Index n = grid.lower.size();
  Box steps{IntVector::Zero(n), IntVector(n)};
  for (Eigen::Index j = 0; j < n; ++j) steps.upper(j) = ((grid.upper(j) - grid.lower(j)) / grid.step).floor();
  for_each_in_box(steps, [&](const IntVector& k) {
    return visit(RatVector(grid.lower + to_rational(k) * grid.step));
  });
}

std::optional<Rational> closed_width(const Polyhedron& p, const RatRowVector& c) {
  const Polyhedron closed = p.closure();
  const LpOutcome hi = lp_optimize(closed, c, Sense::Max);
  const LpOutcome lo = lp_optimize(closed, c, Sense::Min);
  if (hi.status != LpStatus::Finite || lo.status != LpStatus::Finite) return std::nullopt;
  return hi.value - lo.value;
}

// The closure of P is non-empty, bounded and inside the box.
bool inside_box(const Polyhedron& p, const Box& box) {
  const Eigen::Index n = p.dim();
  const Polyhedron closed = p.closure();
  for (Eigen::Index j = 0; j < n; ++j) {
    const RatRowVector e = RatRowVector::Unit(n, j);
    const LpOutcome hi = lp_optimize(closed, e, Sense::Max);
    const LpOutcome lo = lp_optimize(closed, e, Sense::Min);
    if (hi.status != LpStatus::Finite || lo.status != LpStatus::Finite) return false;
    if (hi.value > Rational(box.upper(j)) || lo.value < Rational(box.lower(j))) return false;
  }
  return true;
}

}  // namespace

std::vector<IntVector> brute_int_points(const Polyhedron& p, const Box& box) {
  std::vector<IntVector> out;
  for_each_in_box(box, [&](const IntVector& x) {
    if (p.contains(to_rational(x))) out.push_back(x);
    return true;
  });
  return out;
}

WidthResult brute_lattice_width(const Polyhedron& p, long bound) {
  const Eigen::Index n = p.dim();
  WidthResult best;
  const Box dirs{IntVector::Constant(n, Integer(-bound)), IntVector::Constant(n, Integer(bound))};
  for_each_in_box(dirs, [&](const IntVector& c) {
    if (is_zero(c)) return true;
    const auto w = closed_width(p, to_rational(c).transpose());
    if (w && (!best.width || *w < *best.width)) {
      best.width = w;
      best.direction = c.transpose();
    }
    return true;
  });
  return best;
}

std::optional<RatVector> brute_forall_exists(const ForAllExistsInstance& inst, const ForAllExistsGrid& grid) {
  const Eigen::Index m = inst.a.rows();
  std::optional<RatVector> found;
  for_each_grid_point(grid.b, [&](const RatVector& b) {
    bool member = false;
    if (inst.p == 0) {
      member = inst.q.contains(b);
    } else {
      for_each_in_box(grid.z, [&](const IntVector& z) {
        RatVector bz(m + inst.p);
        bz.head(m) = b;
        bz.tail(inst.p) = to_rational(z);
        member = inst.q.contains(bz);
        return !member;
      });
    }
    if (!member) return true;
    const Polyhedron pb = Polyhedron::from_system(inst.a, b);
    if (!is_feasible(pb)) {
      found = b;
      return false;
    }
    if (!inside_box(pb, grid.x)) return true;
    if (brute_int_points(pb, grid.x).empty()) {
      found = b;
      return false;
    }
    return true;
  });
  return found;
}

Rational brute_gap(const GapInstance& inst, const GapGrid& grid) {
  std::optional<Rational> best;
  for_each_grid_point(grid.b, [&](const RatVector& b) {
    const Polyhedron pb = Polyhedron::from_system(inst.a, b);
    const LpOutcome lp = lp_optimize(pb, inst.c, Sense::Max);
    if (lp.status != LpStatus::Finite || !inside_box(pb, grid.x)) return true;
    std::optional<Rational> ip;
    for (const IntVector& x : brute_int_points(pb, grid.x)) {
      const Rational v = (inst.c * to_rational(x))(0);
      if (!ip || v > *ip) ip = v;
    }
    if (!ip) return true;
    const Rational gap = lp.value - *ip;
    if (!best || gap > *best) best = gap;
    return true;
  });
  if (!best) throw std::domain_error("no feasible grid point");
  return *best;
}

}  // namespace pilp::oracle
