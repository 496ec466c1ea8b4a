#include <gtest/gtest.h>

#include <optional>

#include "properties.hpp"

using namespace pilp;
using namespace pilp::testing;

namespace {

// Best objective over basic feasible solutions of a bounded closed polyhedron.
std::optional<Rational> vertex_maximum(const Polyhedron& p, const RatRowVector& c) {
  const RatMatrix a = p.matrix();
  const RatVector b = p.rhs();
  std::optional<Rational> best;
  for (const auto& basis : enumerate_bases(a)) {
    const RatVector x = inverse(select_rows(a, basis)) * select_rows(b, basis);
    if (!p.contains(x)) continue;
    const Rational v = (c * x)(0);
    if (!best || v > *best) best = v;
  }
  return best;
}

Polyhedron random_polyhedron(std::mt19937& rng, Eigen::Index n, int m, long bound, bool allow_strict) {
  Polyhedron p(n);
  for (int i = 0; i < m; ++i) {
    p.add(random_row(rng, n, bound), Rational(uniform(rng, -bound, 3 * bound), 2),
          allow_strict && uniform(rng, 0, 2) == 0);
  }
  return p;
}

}  // namespace

TEST(Polyhedron, ZeroRowsResolvedOnInsertion) {
  Polyhedron p(2);
  p.add(RatRowVector::Zero(2), 1);
  EXPECT_EQ(p.size(), 0u);
  EXPECT_FALSE(p.trivially_empty());
  p.add(RatRowVector::Zero(2), 0, true);
  EXPECT_TRUE(p.trivially_empty());
  EXPECT_FALSE(is_feasible(p));
}

TEST(Feasibility, Examples) {
  Polyhedron a(1);
  a.add(rat_row({1}), 1);
  a.add(rat_row({-1}), 0);
  const auto w = feasible_point(a);
  ASSERT_TRUE(w);
  EXPECT_TRUE(a.contains(*w));

  Polyhedron open(1);
  open.add(rat_row({1}), 0, true);
  open.add(rat_row({-1}), 0, true);
  EXPECT_FALSE(is_feasible(open));

  Polyhedron half(1);
  half.add(rat_row({1}), 1, true);
  half.add(rat_row({-1}), -1);
  EXPECT_FALSE(is_feasible(half));
}

TEST(LpOptimize, Examples) {
  const Polyhedron square = box(2, 0, 1);
  LpOutcome r = lp_optimize(square, rat_row({1, 0}), Sense::Max);
  EXPECT_EQ(r.status, LpStatus::Finite);
  EXPECT_EQ(r.value, Rational(1));
  EXPECT_TRUE(r.attained);
  EXPECT_TRUE(square.contains(r.point));

  Polyhedron open(1);
  open.add(rat_row({1}), 1, true);
  r = lp_optimize(open, rat_row({1}), Sense::Max);
  EXPECT_EQ(r.status, LpStatus::Finite);
  EXPECT_EQ(r.value, Rational(1));
  EXPECT_FALSE(r.attained);

  Polyhedron ray(1);
  ray.add(rat_row({-1}), 0);
  EXPECT_EQ(lp_optimize(ray, rat_row({1}), Sense::Max).status, LpStatus::Unbounded);
  r = lp_optimize(ray, rat_row({1}), Sense::Min);
  EXPECT_EQ(r.status, LpStatus::Finite);
  EXPECT_EQ(r.value, Rational(0));
}

TEST(LpOptimize, InfeasibleAndDegenerate) {
  Polyhedron p(2);
  p.add(rat_row({1, 1}), -1);
  p.add(rat_row({-1, 0}), 0);
  p.add(rat_row({0, -1}), 0);
  EXPECT_EQ(lp_optimize(p, rat_row({1, 0}), Sense::Max).status, LpStatus::Infeasible);

  // Free direction orthogonal to the objective: x2 unconstrained.
  Polyhedron strip(2);
  strip.add(rat_row({1, 0}), 2);
  strip.add(rat_row({-1, 0}), 0);
  LpOutcome r = lp_optimize(strip, rat_row({1, 0}), Sense::Max);
  EXPECT_EQ(r.status, LpStatus::Finite);
  EXPECT_EQ(r.value, Rational(2));
  EXPECT_EQ(lp_optimize(strip, rat_row({1, 1}), Sense::Max).status, LpStatus::Unbounded);

  // Degenerate vertex with many tight rows.
  Polyhedron d(2);
  for (long k = 1; k <= 6; ++k) d.add(rat_row({k, 1}), 0);
  d.add(rat_row({-1, 0}), 0);
  r = lp_optimize(d, rat_row({0, 1}), Sense::Max);
  EXPECT_EQ(r.status, LpStatus::Finite);
  EXPECT_EQ(r.value, Rational(0));
}

TEST(LpOptimize, AgreesWithVertexEnumeration) {
  std::mt19937 rng(23);
  for (int t = 0; t < 150; ++t) {
    const Eigen::Index n = uniform(rng, 1, 3);
    Polyhedron p = box(n, -5, 5);
    p.append(random_polyhedron(rng, n, static_cast<int>(uniform(rng, 1, 6)), 5, false));
    const RatRowVector c = random_row(rng, n, 5);
    const auto expected = vertex_maximum(p, c);
    const LpOutcome r = lp_optimize(p, c, Sense::Max);
    if (!expected) {
      EXPECT_EQ(r.status, LpStatus::Infeasible);
      continue;
    }
    ASSERT_EQ(r.status, LpStatus::Finite);
    EXPECT_EQ(r.value, *expected);
    EXPECT_TRUE(r.attained);
    EXPECT_TRUE(p.contains(r.point));
    EXPECT_EQ((c * r.point)(0), r.value);
  }
}

TEST(LpOptimize, FeasibilityAgreesWithStatus) {
  std::mt19937 rng(29);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = uniform(rng, 1, 3);
    const Polyhedron p = random_polyhedron(rng, n, static_cast<int>(uniform(rng, 1, 7)), 4, true);
    const auto w = feasible_point(p);
    const LpOutcome r = lp_optimize(p, random_row(rng, n, 4), Sense::Min);
    EXPECT_EQ(w.has_value(), r.status != LpStatus::Infeasible);
    if (w) EXPECT_TRUE(p.contains(*w));
    if (r.attained) EXPECT_TRUE(p.contains(r.point));
  }
}

TEST(FourierMotzkin, Examples) {
  Polyhedron p(2);
  p.add(rat_row({1, 1}), 1);
  p.add(rat_row({-1, 0}), 0);
  p.add(rat_row({0, -1}), 0);
  Polyhedron q = fm_eliminate(p, 1);
  Polyhedron expected(1);
  expected.add(rat_row({-1}), 0);
  expected.add(rat_row({1}), 1);
  EXPECT_EQ(canonicalize(q).size(), 2u);
  for (const auto& r : expected.constraints()) {
    bool found = false;
    for (const auto& s : q.constraints()) found = found || s == r;
    EXPECT_TRUE(found) << r.a << " <= " << r.beta;
  }

  Polyhedron s(2);
  s.add(rat_row({0, 1}), 1, true);
  s.add(rat_row({1, -1}), 0);
  q = fm_eliminate(s, 1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q.constraints()[0], (LinearConstraint{rat_row({1}), 1, true}));

  Polyhedron u(2);
  u.add(rat_row({1, 0}), 3);
  u.add(rat_row({-2, 0}), 1, true);
  q = fm_eliminate(u, 1);
  EXPECT_EQ(q.dim(), 1);
  EXPECT_EQ(q.size(), 2u);
}

TEST(FourierMotzkin, SoundOnRandomPolyhedra) {
  std::mt19937 rng(31);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = uniform(rng, 1, 4);
    const Polyhedron p = random_polyhedron(rng, n, static_cast<int>(uniform(rng, 1, 8)), 5, true);
    const Eigen::Index k = uniform(rng, 0, n - 1);
    const Polyhedron q = fm_eliminate(p, k, {t % 2 == 0});
    for (int s = 0; s < 20; ++s) {
      RatVector y(n - 1);
      for (Eigen::Index j = 0; j < n - 1; ++j) y(j) = Rational(uniform(rng, -8, 8), 2);
      EXPECT_EQ(q.contains(y), liftable(p, k, y));
    }
  }
}

TEST(Transform, TranslateAndScale) {
  const Polyhedron square = box(2, 0, 1);
  const Polyhedron moved = translate(square, rat_vector({1, 1}));
  EXPECT_TRUE(moved.contains(rat_vector({2, 2})));
  EXPECT_TRUE(moved.contains(rat_vector({1, 1})));
  EXPECT_FALSE(moved.contains(rat_vector({0, 1})));

  const Polyhedron half = scale(square, Rational(1, 2));
  EXPECT_TRUE(half.contains(rat_vector({Rational(1, 2), Rational(1, 2)})));
  EXPECT_FALSE(half.contains(rat_vector({Rational(3, 4), 0})));
  EXPECT_EQ(scale(square, 1), square);

  const Polyhedron point = scale(square, 0);
  EXPECT_TRUE(point.contains(rat_vector({0, 0})));
  EXPECT_FALSE(point.contains(rat_vector({Rational(1, 9), 0})));

  Polyhedron ray(1);
  ray.add(rat_row({-1}), 0);
  EXPECT_THROW(scale(ray, 0), std::domain_error);
}

TEST(Bases, Examples) {
  using Bases = std::vector<std::vector<Eigen::Index>>;
  EXPECT_EQ(enumerate_bases(rat_matrix({{1}, {-1}})), (Bases{{0}, {1}}));
  EXPECT_EQ(enumerate_bases(box_matrix()), (Bases{{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  EXPECT_EQ(enumerate_bases(rat_matrix({{1, 0}, {0, 1}})), (Bases{{0, 1}}));
  EXPECT_THROW(enumerate_bases(rat_matrix({{1, 1}, {2, 2}})), std::domain_error);
}
