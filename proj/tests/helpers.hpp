#pragma once

#include <initializer_list>
#include <random>

#include "pilp/polyhedron.hpp"

namespace pilp::testing {

inline RatMatrix rat_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  RatMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const Rational& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline RatVector rat_vector(std::initializer_list<Rational> values) {
  RatVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Rational& x : values) v(i++) = x;
  return v;
}

inline RatRowVector rat_row(std::initializer_list<Rational> values) { return rat_vector(values).transpose(); }

inline Polyhedron box(Eigen::Index n, const Rational& lo, const Rational& hi) {
  Polyhedron p(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    RatRowVector e = RatRowVector::Zero(n);
    e(j) = 1;
    p.add(e, hi);
    p.add(RatRowVector(-e), -lo);
  }
  return p;
}

/// The 4x2 matrix whose rows are e1, -e1, e2, -e2.
inline RatMatrix box_matrix() { return rat_matrix({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}); }

inline long uniform(std::mt19937& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline RatRowVector random_row(std::mt19937& rng, Eigen::Index n, long bound) {
  RatRowVector a(n);
  do {
    for (Eigen::Index j = 0; j < n; ++j) a(j) = uniform(rng, -bound, bound);
  } while (is_zero(a));
  return a;
}

}  // namespace pilp::testing
