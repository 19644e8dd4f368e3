#pragma once

#include <stdexcept>
#include <string>

namespace tailcert {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Result would leave the representable/defined range.
struct RangeError : std::out_of_range {
  explicit RangeError(const std::string& msg) : std::out_of_range(msg) {}
};

// Structurally invalid configuration: bad model/variant pairing, unknown keys,
// inconsistent dimensions.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative numeric routine failed to converge within its budget.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tailcert
