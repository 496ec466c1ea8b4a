#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pilp/config.hpp"
#include "pilp/polyhedron.hpp"

namespace pilp {

/// A candidate flat direction c for the family P_b = {x : A x <= b}, together
/// with the basis maps F = A_N1^{-1} E_N1 and G = A_N2^{-1} E_N2 (n x m) that
/// give max c x = c F b and min c x = c G b whenever P_b is non-empty.
struct WidthTriple {
  RatMatrix f;
  RatMatrix g;
  IntRowVector c;
  std::vector<Eigen::Index> n1;
  std::vector<Eigen::Index> n2;

  /// The linear form b -> c (F - G) b.
  RatRowVector functional() const;
  Rational width(const RatVector& b) const { return (functional() * b)(0); }
};

using TripleList = std::vector<WidthTriple>;

/// Triples for every unordered basis pair and every integer-hull vertex of the
/// pair's direction cone (origin cut off), deduplicated by (c, F, G).
/// A must have full column rank. Results are cached per matrix.
/// Throws InfiniteWidthError when no pair admits a direction.
std::shared_ptr<const TripleList> flat_direction_triples(const RatMatrix& a, const Config& config = default_config());

/// 2 m^(2n) (2n+1)^n (24 n^5 phi)^(n-1), phi the largest column size of A.
Integer triple_count_bound(const RatMatrix& a);

/// Index of the triple with the smallest width at b (first among ties).
std::size_t best_triple(const TripleList& triples, const RatVector& b);

struct WidthRegion {
  Polyhedron region;   ///< subset of b-space
  std::size_t triple;  ///< index into the triple list
};

/// Region i collects the b in Q where triple i is the first minimiser of the
/// width: w_i < w_j for j < i and w_i <= w_j for j > i. Empty regions are dropped.
struct WidthPartition {
  std::shared_ptr<const TripleList> triples;
  std::vector<WidthRegion> regions;

  /// Region containing b, if b lies in Q.
  std::optional<std::size_t> locate(const RatVector& b) const;
};

/// The region of triple i within Q (empty when triple i repeats an earlier functional).
Polyhedron width_region(const TripleList& triples, std::size_t i, const Polyhedron& q);

WidthPartition width_partition(const RatMatrix& a, const Polyhedron& q, const Config& config = default_config());

}  // namespace pilp
