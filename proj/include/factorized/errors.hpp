#pragma once

#include <stdexcept>
#include <string>

namespace factorized {

/// Mismatched vector lengths, mesh widths, or operator dimensions.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Solver breakdown: non-positive pivot, indefinite system, residual above tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters or option combinations.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace factorized
