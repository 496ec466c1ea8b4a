#pragma once

#include <optional>

#include "pilp/config.hpp"
#include "pilp/instances.hpp"

namespace pilp {

enum class Verdict { Holds, Fails };

/// A parameter b with (b, z) in Q, z integral, and A x <= b without integral solutions.
struct Counterexample {
  RatVector b;
  IntVector z;
};

struct DecisionResult {
  Verdict verdict = Verdict::Holds;
  std::optional<Counterexample> counterexample;  ///< set when Fails

  bool holds() const { return verdict == Verdict::Holds; }
};

/// Decides: for all b in Q/Z^p, A x <= b has an integral solution.
///
/// Parameters without a fractional solution are found first, by one MILP per
/// row of the projection {b : exists x, A x <= b}. The remaining ones are
/// covered by the structural partition: for each scheme and each assignment
/// of a violated row to every candidate, one MILP asks for a parameter at
/// which all candidates fail. Certificates are re-verified before returning.
DecisionResult decide_forall_exists(const ForAllExistsInstance& inst, const Config& config = default_config());

/// Same verdict via subsystems of min(m, 2^n) rows: A x <= b is integer-infeasible
/// exactly when one such subsystem is.
DecisionResult bell_scarf_decide(const ForAllExistsInstance& inst, const Config& config = default_config());

/// Checks a certificate end to end; throws std::logic_error if it is not one.
void verify_counterexample(const ForAllExistsInstance& inst, const Counterexample& cex,
                           const Config& config = default_config());

}  // namespace pilp
