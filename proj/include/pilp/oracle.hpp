#pragma once

#include <optional>
#include <vector>

#include "pilp/instances.hpp"
#include "pilp/lattice.hpp"

namespace pilp::oracle {

struct Box {
  IntVector lower;
  IntVector upper;
};

/// Points lower + k * step, k >= 0, not exceeding upper (per coordinate).
struct Grid {
  Rational step;
  RatVector lower;
  RatVector upper;
};

/// Integral points of P in the box, by exhaustive membership tests.
std::vector<IntVector> brute_int_points(const Polyhedron& p, const Box& box);

/// Minimum width over nonzero integral directions with entries in [-bound, bound].
WidthResult brute_lattice_width(const Polyhedron& p, long bound);

struct ForAllExistsGrid {
  Grid b;
  Box z;  ///< range of the projected integer coordinates
  Box x;  ///< enumeration box for A x <= b
};

/// First grid b in Q/Z^p (z searched in its box) whose P_b lies in the x box
/// and has no integral point. nullopt means the grid found no counterexample.
std::optional<RatVector> brute_forall_exists(const ForAllExistsInstance& inst, const ForAllExistsGrid& grid);

struct GapGrid {
  Grid b;
  Box x;
};

/// Largest LP - IP difference over grid b whose P_b lies in the x box and has integral points.
/// Throws std::domain_error("no feasible grid point") when no grid point qualifies.
Rational brute_gap(const GapInstance& inst, const GapGrid& grid);

}  // namespace pilp::oracle
