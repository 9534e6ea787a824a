#pragma once

#include <stdexcept>
#include <string>

namespace divkit {

// Bad argument values: unknown generator names, parameters out of range,
// malformed distributions or partitions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A likelihood ratio or interval falls outside a generator's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quantity is undefined for the given input (e.g. N-infinity of a scheme
// whose mean skew sits on the boundary).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files. `field` names the offending entry.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)), detail_(what) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

}  // namespace divkit
