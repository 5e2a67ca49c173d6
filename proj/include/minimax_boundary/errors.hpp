#pragma once

#include <stdexcept>

namespace minimax_boundary {

/// Observation grid does not reach the end of the kernel support.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observation times are not a uniform grid starting at 0.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel side and path configuration do not match.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace minimax_boundary
