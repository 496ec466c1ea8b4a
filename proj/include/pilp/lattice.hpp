#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pilp/config.hpp"
#include "pilp/polyhedron.hpp"

namespace pilp {

/// max c x - min c x over the closure of P; nullopt when unbounded.
/// Throws std::domain_error("empty polyhedron") when P is empty.
std::optional<Rational> width_along(const Polyhedron& p, const IntRowVector& c);

struct WidthResult {
  std::optional<Rational> width;  ///< nullopt: infinite width
  IntRowVector direction;         ///< primitive; empty when the width is infinite

  bool infinite() const { return !width.has_value(); }
};

/// Lattice width of the closure of a non-empty P, read off the flat-direction
/// triples of its constraint matrix at its right-hand side.
WidthResult lattice_width(const Polyhedron& p, const Config& config = default_config());

/// Same quantity computed for the single polyhedron: directions are searched
/// in the lattice of the lineality-free part of the dual cone, pruned by LP.
WidthResult lattice_width_direct(const Polyhedron& p);

/// True iff {x : A x <= b} has finite lattice width for some (equivalently every)
/// b with non-empty P_b.
bool finite_width_test(const RatMatrix& a);

/// Calls visit(x) for every integral x in P (strict rows respected) in
/// lexicographic order; stops when visit returns false. P must be bounded.
void for_each_integer_point(const Polyhedron& p, const std::function<bool(const IntVector&)>& visit);

enum class HullFilter {
  Dominance,       ///< drop x when x - y is a nonzero recession direction for another candidate y
  ConvexPosition,  ///< additionally drop x in conv(other candidates) + recession cone
};

/// Integral points of the closed polyhedron P with |x|_inf <= bound, filtered;
/// contains every vertex of the integer hull of P lying in the box.
std::vector<IntVector> integer_hull_vertex_superset(const Polyhedron& p, const Integer& bound,
                                                    HullFilter filter = HullFilter::Dominance);

/// Primitive generators of the extreme rays of the pointed cone {x : G x <= 0}.
std::vector<IntVector> extreme_rays(const RatMatrix& g);

}  // namespace pilp
