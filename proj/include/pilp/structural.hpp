#pragma once

#include <vector>

#include "pilp/config.hpp"
#include "pilp/polyhedron.hpp"

namespace pilp {

/// v -> linear * v + offset.
struct AffineMap {
  RatMatrix linear;
  RatVector offset;

  Eigen::Index inputs() const { return linear.cols(); }
  Eigen::Index outputs() const { return linear.rows(); }
  RatVector operator()(const RatVector& v) const { return linear * v + offset; }
  /// Same map on a longer input vector; the extra coordinates are ignored.
  AffineMap padded(Eigen::Index inputs) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// The integral point u * ceil(t(b, z)).
struct Candidate {
  UnimodularMatrix u;
  AffineMap t;

  IntVector evaluate(const RatVector& bz) const;
};

/// One region S = S'/Z^l of right-hand sides with its candidate maps.
///
/// The coordinates of S' are (b, z) with z in Z^l. Each z_s is a ceiling
/// z_s = ceil(rounding[s](b, z_0, ..., z_{s-1})) and S' contains the rows
/// rounding[s] <= z_s < rounding[s] + 1, so z is a function of b on S.
/// Candidate maps read (b, z); `parameter_only` rewrites them as maps of b alone.
struct CandidateScheme {
  Polyhedron sprime;
  Eigen::Index m = 0;
  Eigen::Index l = 0;
  std::vector<AffineMap> rounding;
  std::vector<Candidate> candidates;

  /// z with (b, z) in S', found by mixed_integer_feasible; nullopt when b is not in S.
  std::optional<IntVector> projection_witness(const RatVector& b, const Config& config = default_config()) const;
};

struct StructuralPartition {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  std::vector<CandidateScheme> schemes;
};

/// Partition of Q (P_b assumed non-empty on Q) into schemes: slabs along the
/// lattice-width direction, then recursion on each slab down to the highest
/// lower-bound constraint of the last coordinate.
/// Throws LimitError when n exceeds config.max_partition_dim or the
/// number of schemes exceeds config.max_schemes, InfiniteWidthError when A
/// has infinite lattice width.
StructuralPartition structural_partition(const RatMatrix& a, const Polyhedron& q,
                                         const Config& config = default_config());

/// The scheme of the partition whose region contains b, built without
/// enumerating the others.
CandidateScheme locate_scheme(const RatMatrix& a, const Polyhedron& q, const RatVector& b,
                              const Config& config = default_config());

/// The points U_j ceil(T_j (b, z)) in candidate order. Throws InputError when b is not in S.
std::vector<IntVector> evaluate_candidates(const CandidateScheme& scheme, const RatVector& b,
                                           const Config& config = default_config());

/// Candidates as maps of b alone (l = 1 schemes, so n <= 2): a candidate
/// coordinate ceil(alpha b + kappa - psi z) with z = ceil(rho b) equals
/// -floor(psi) z + ceil(alpha b + kappa - {psi} rho b - delta) for delta = 0 or
/// delta = 1, so each fractional psi doubles the candidate.
std::vector<Candidate> parameter_only(const CandidateScheme& scheme);

}  // namespace pilp
