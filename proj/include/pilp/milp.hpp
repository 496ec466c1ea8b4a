#pragma once

#include <set>

#include "pilp/config.hpp"
#include "pilp/polyhedron.hpp"

namespace pilp {

/// Feasibility question over the variables of P; indices in `integral` must take integer values.
struct MipProblem {
  Polyhedron p;
  std::set<Eigen::Index> integral;
};

enum class Feasibility { Feasible, Infeasible };

struct FeasibilityResult {
  Feasibility status = Feasibility::Infeasible;
  RatVector witness;  ///< set when Feasible

  bool feasible() const { return status == Feasibility::Feasible; }
};

/// Decides P ∩ Z^n != ∅ by flatness-driven slab recursion. In dimensions
/// without a configured flatness constant every integral slab along a
/// finite-width direction is explored instead.
FeasibilityResult integer_feasible(const Polyhedron& p, const Config& config = default_config());

/// Projects out the continuous variables, decides the integer part, and lifts
/// the witness back coordinate by coordinate.
FeasibilityResult mixed_integer_feasible(const MipProblem& problem, const Config& config = default_config());

}  // namespace pilp
