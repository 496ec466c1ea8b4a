#pragma once

#include "pilp/polyhedron.hpp"

namespace pilp {

/// The sentence: for all b in Q/Z^p there is an integral x with A x <= b.
/// Q lives in R^(m+p); its last p coordinates are the projected integer ones.
struct ForAllExistsInstance {
  RatMatrix a;
  Polyhedron q;
  Eigen::Index p = 0;
};

/// max over b of max{c x : A x <= b} - max{c x : A x <= b, x integral}.
struct GapInstance {
  RatMatrix a;
  RatRowVector c;
};

}  // namespace pilp
