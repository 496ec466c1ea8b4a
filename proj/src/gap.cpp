#include "pilp/gap.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pilp/errors.hpp"
#include "pilp/lattice.hpp"

namespace pilp {

namespace {

void check(const GapInstance& inst) {
  if (inst.c.size() != inst.a.cols()) throw InputError("c", "length must equal the number of columns of A");
}

std::vector<std::vector<Eigen::Index>> subsets(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> cur;
  const std::function<void(Eigen::Index)> rec = [&](Eigen::Index from) {
    if (static_cast<Eigen::Index>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Eigen::Index i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// max c x over the integral points of a bounded P_b.
std::optional<Rational> integer_optimum(const Polyhedron& p, const RatRowVector& c) {
  std::optional<Rational> best;
  for_each_integer_point(p, [&](const IntVector& x) {
    const Rational v = (c * to_rational(x))(0);
    if (!best || v > *best) best = v;
    return true;
  });
  return best;
}

// LP(b) - IP(b) when both are finite and P_b is bounded.
std::optional<Rational> gap_at(const GapInstance& inst, const RatVector& b) {
  const Polyhedron pb = Polyhedron::from_system(inst.a, b);
  const LpOutcome lp = lp_optimize(pb, inst.c, Sense::Max);
  if (lp.status != LpStatus::Finite) return std::nullopt;
  for (Eigen::Index j = 0; j < inst.a.cols(); ++j) {
    const RatRowVector e = RatRowVector::Unit(inst.a.cols(), j);
    if (lp_optimize(pb, e, Sense::Max).status != LpStatus::Finite) return std::nullopt;
    if (lp_optimize(pb, e, Sense::Min).status != LpStatus::Finite) return std::nullopt;
  }
  const auto ip = integer_optimum(pb, inst.c);
  if (!ip) return std::nullopt;
  return lp.value - *ip;
}

}  // namespace

Polyhedron build_value_polyhedron(const GapInstance& inst) {
  check(inst);
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  // Coordinates (beta, b, x).
  Polyhedron lifted(1 + m + n);
  RatRowVector obj = RatRowVector::Zero(1 + m + n);
  obj(0) = 1;
  obj.tail(n) = -inst.c;
  lifted.add(obj, 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    RatRowVector row = RatRowVector::Zero(1 + m + n);
    row(1 + i) = -1;
    row.tail(n) = inst.a.row(i);
    lifted.add(row, 0);
  }
  return fm_project(lifted, 1 + m);
}

ForAllExistsInstance gap_sentence(const GapInstance& inst, const Rational& gamma) {
  check(inst);
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  RatMatrix stacked(m + 1, n);
  stacked << -inst.c, inst.a;
  // (r0, b, y) -> (beta, b) with beta = gamma - r0.
  RatMatrix to_value = RatMatrix::Zero(m + 1, m + 1 + n);
  to_value(0, 0) = -1;
  to_value.block(1, 1, m, m) = RatMatrix::Identity(m, m);
  RatVector shift = RatVector::Zero(m + 1);
  shift(0) = gamma;
  Polyhedron q = preimage(build_value_polyhedron(inst), to_value, shift);
  for (Eigen::Index i = 0; i < m; ++i) {
    RatRowVector row = RatRowVector::Zero(m + 1 + n);
    row(1 + i) = -1;
    row.tail(n) = inst.a.row(i);
    q.add(row, 0);
  }
  return {stacked, q, n};
}

GapTest gap_exceeds(const GapInstance& inst, const Rational& gamma, const Config& config) {
  check(inst);
  if (gamma.sign() < 0) throw InputError("gamma", "must be non-negative");
  GapTest out;
  if (is_zero(inst.c)) return out;
  const DecisionResult r = decide_forall_exists(gap_sentence(inst, gamma), config);
  if (r.holds()) return out;
  out.exceeds = true;
  out.b = RatVector(r.counterexample->b.tail(inst.a.rows()));
  out.beta = gamma - r.counterexample->b(0);
  return out;
}

Integer default_denominator_bound(const GapInstance& inst) {
  check(inst);
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  RatMatrix s(m + 1, n);
  for (Eigen::Index i = 0; i < m; ++i) s.row(i) = inst.a.row(i) * Rational(denominator_lcm(RatMatrix(inst.a.row(i))));
  const Integer cden = denominator_lcm(RatMatrix(inst.c));
  s.row(m) = inst.c * Rational(cden);
  std::set<Integer> values;
  for (Eigen::Index k = 1; k <= n; ++k) {
    for (const auto& rows : subsets(m + 1, k)) {
      for (const auto& cols : subsets(n, k)) {
        RatMatrix sub(k, k);
        for (Eigen::Index r = 0; r < k; ++r)
          for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = s(rows[r], cols[c]);
        const Rational d = abs(determinant(sub));
        if (!d.is_zero()) values.insert(d.num());
      }
    }
  }
  Integer out = cden;
  for (const Integer& v : values) out *= v;
  return out;
}

GapResult max_gap(const GapInstance& inst, const std::optional<Integer>& denominator, const Config& config) {
  check(inst);
  GapResult out;
  const Eigen::Index m = inst.a.rows();
  if (is_zero(inst.c)) {
    out.attained = Attainment::Attained;
    out.witness = RatVector::Zero(m);
    return out;
  }
  const Integer d = denominator ? *denominator
                                : (config.denominator_bound ? *config.denominator_bound : default_denominator_bound(inst));
  if (d < Integer(1)) throw InputError("denominator", "must be at least 1");

  std::vector<std::pair<Rational, GapTest>> tests;
  const auto test = [&](const Rational& gamma) {
    GapTest t = gap_exceeds(inst, gamma, config);
    out.trace.push_back({gamma, t.exceeds});
    tests.emplace_back(gamma, t);
    return t.exceeds;
  };

  if (!test(Rational(0))) {
    out.attained = Attainment::Attained;
    out.witness = RatVector::Zero(m);
    return out;
  }
  Rational lo(0), hi(1);
  while (test(hi)) {
    lo = hi;
    hi *= Rational(2);
    if (hi > config.gap_cap) throw LimitError("gap exceeds cap");
  }
  const Rational eps = Rational(1) / (Rational(2) * Rational(d) * Rational(d));
  while (hi - lo >= eps) {
    const Rational mid = (lo + hi) / Rational(2);
    if (test(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Rational value = rational_reconstruct(hi, d);
  if (!(lo < value && value <= hi)) throw LimitError("denominator bound too small");
  if (test(value)) throw LimitError("denominator bound too small");
  if (value.sign() > 0 && !test(value - Rational(1) / Rational(d))) throw LimitError("denominator bound too small");

  // Monotone: a smaller gamma can only be exceeded more easily.
  for (const auto& [g1, t1] : tests)
    for (const auto& [g2, t2] : tests)
      if (g1 < g2 && t2.exceeds && !t1.exceeds) throw std::logic_error("gap test is not monotone");

  out.value = value;
  for (const auto& [g, t] : tests) {
    if (!t.b) continue;
    const auto at = gap_at(inst, *t.b);
    if (at && *at == value) {
      out.attained = Attainment::Attained;
      out.witness = t.b;
      break;
    }
  }
  return out;
}

}  // namespace pilp
