#include "pilp/config.hpp"

#include <stdexcept>

#include "pilp/errors.hpp"

namespace pilp {

FlatnessTable::FlatnessTable() {
  values_[1] = 1;
  values_[2] = 3;
  values_[3] = 16;
}

Rational FlatnessTable::omega(int n) const {
  const auto it = values_.find(n);
  if (it == values_.end()) throw LimitError("flatness constant not configured for n = " + std::to_string(n));
  return it->second;
}

void FlatnessTable::set(int n, const Rational& value) {
  if (n < 1) throw std::invalid_argument("flatness dimension must be positive");
  if (value.sign() <= 0) throw std::invalid_argument("flatness constant must be positive");
  auto below = values_.lower_bound(n);
  if (below != values_.begin() && std::prev(below)->second > value) {
    throw std::invalid_argument("flatness constants must be non-decreasing in n");
  }
  auto above = values_.upper_bound(n);
  if (above != values_.end() && above->second < value) {
    throw std::invalid_argument("flatness constants must be non-decreasing in n");
  }
  values_[n] = value;
}

const Config& default_config() {
  static const Config config;
  return config;
}

}  // namespace pilp
