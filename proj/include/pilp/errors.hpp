#pragma once

#include <stdexcept>
#include <string>

namespace pilp {

/// Malformed or inconsistent input; `field` names the offending piece when known.
class InputError : public std::invalid_argument {
 public:
  InputError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A configured limit was exceeded (dimension ceiling, missing flatness constant, search cap).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pilp

namespace pilp {

/// Every member of the family has infinite lattice width, so no flat direction exists.
class InfiniteWidthError : public std::domain_error {
 public:
  InfiniteWidthError() : std::domain_error("infinite lattice width: every P_b contains integral points") {}
};

}  // namespace pilp
