#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "pilp/rational.hpp"

namespace pilp {

/// Upper bounds omega(n) on the flatness constant, one per dimension.
class FlatnessTable {
 public:
  /// omega(1) = 1, omega(2) = 3, omega(3) = 16.
  FlatnessTable();

  /// Throws LimitError("flatness constant not configured") outside the table.
  Rational omega(int n) const;
  /// Slab count bound ceil(omega(n)).
  long slabs(int n) const { return omega(n).ceil().to_long(); }
  bool has(int n) const { return values_.count(n) > 0; }
  int max_dim() const { return values_.empty() ? 0 : values_.rbegin()->first; }

  /// Sets omega(n); keeps the table positive and non-decreasing (std::invalid_argument otherwise).
  void set(int n, const Rational& value);
  void clear() { values_.clear(); }
  const std::map<int, Rational>& values() const { return values_; }

 private:
  std::map<int, Rational> values_;
};

struct Config {
  FlatnessTable flatness;
  /// Ceiling on the coordinate bound used when enumerating integer-hull candidates.
  Integer hull_bound = 4096;
  /// Denominator bound for the gap search; derived from subdeterminants when absent.
  std::optional<Integer> denominator_bound;
  /// The gap search gives up once the doubling bracket passes this value.
  Rational gap_cap = 1024;
  /// Largest dimension accepted by the structural construction.
  int max_structural_dim = 3;
  /// Largest dimension for which the full structural partition is enumerated.
  int max_partition_dim = 2;
  /// The structural partition gives up (LimitError) beyond this many schemes.
  std::size_t max_schemes = 20000;
};

/// Process-wide defaults.
const Config& default_config();

}  // namespace pilp
