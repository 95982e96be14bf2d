#pragma once

#include <stdexcept>
#include <string>

namespace dbs {

// Shape mismatches: non-square permanent input, odd mode counts, etc.
struct dimension_error : std::invalid_argument {
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

// Bad parameters: conservation violations, out-of-range indices, invalid λ.
struct configuration_error : std::invalid_argument {
  explicit configuration_error(const std::string& what) : std::invalid_argument(what) {}
};

// Problem instance exceeds the supported enumeration / kernel bounds.
struct size_limit_error : std::length_error {
  explicit size_limit_error(const std::string& what) : std::length_error(what) {}
};

// Internal cross-checks failed (normalization identity, unitarity residual).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dbs
