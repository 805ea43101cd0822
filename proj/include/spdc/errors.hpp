#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

/// Invalid argument or configuration value (maps to CLI exit code 2).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Bad or degenerate data at runtime: parse failures, zero modes, missing
/// rings (maps to CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spdc
