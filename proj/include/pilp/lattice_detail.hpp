#pragma once

#include <vector>

#include "pilp/polyhedron.hpp"

namespace pilp::detail {

/// m scaled by the lcm of its denominators.
RatMatrix positive_integral(const RatMatrix& m);

/// G with {c : G c <= 0} = cone(rows of A_N1) intersected with -cone(rows of A_N2),
/// given the basis inverses. The first n rows are the columns of D1.
RatMatrix pair_cone(const RatMatrix& inv1, const RatMatrix& inv2);

/// The same cone with the cut c D1 1 <= -1, which removes exactly the origin
/// from its integral points.
Polyhedron pair_cone_cut(const RatMatrix& inv1, const RatMatrix& inv2);

/// Integral points of the bounded `region`, reduced by dominance along the
/// pointed cone {d : rec d <= 0} and optionally to convex position.
std::vector<IntVector> hull_candidates(const Polyhedron& region, const RatMatrix& rec, bool convex);

}  // namespace pilp::detail
