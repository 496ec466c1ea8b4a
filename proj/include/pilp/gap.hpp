#pragma once

#include <optional>
#include <vector>

#include "pilp/config.hpp"
#include "pilp/decide.hpp"
#include "pilp/instances.hpp"

namespace pilp {

/// {(beta, b) : max{c x : A x <= b} >= beta}, by Fourier-Motzkin on x.
Polyhedron build_value_polyhedron(const GapInstance& inst);

struct GapTest {
  bool exceeds = false;
  std::optional<RatVector> b;  ///< right-hand side with IP feasible and LP - IP > gamma
  std::optional<Rational> beta;
};

/// The sentence "for all (beta - gamma, b) with LP value >= beta and A y <= b
/// for some integral y, c x >= beta - gamma has an integral solution with
/// A x <= b". It fails exactly when the gap exceeds gamma.
ForAllExistsInstance gap_sentence(const GapInstance& inst, const Rational& gamma);

/// Whether LP(b) - IP(b) > gamma for some b with A x <= b integer-feasible.
GapTest gap_exceeds(const GapInstance& inst, const Rational& gamma, const Config& config = default_config());

enum class Attainment { Unknown, Attained };

struct GapStep {
  Rational gamma;
  bool exceeds;
};

struct GapResult {
  Rational value;  ///< supremum of LP(b) - IP(b)
  Attainment attained = Attainment::Unknown;
  std::optional<RatVector> witness;  ///< b attaining the value, when found
  std::vector<GapStep> trace;
};

/// Product of the distinct absolute values of the non-zero subdeterminants of
/// [A'; c'], times the denominator of c. A' has integral rows (row scaling
/// leaves the family unchanged) and c' = den(c) c.
Integer default_denominator_bound(const GapInstance& inst);

/// Doubling from 1 for an upper bound (LimitError "gap exceeds cap" past
/// config.gap_cap), then bisection to width below 1/(2 D^2) and rational
/// reconstruction with denominator at most D. LimitError "denominator bound
/// too small" when the reconstructed value fails verification.
GapResult max_gap(const GapInstance& inst, const std::optional<Integer>& denominator = std::nullopt,
                  const Config& config = default_config());

}  // namespace pilp
