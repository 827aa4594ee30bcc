#pragma once

#include <stdexcept>
#include <string>

namespace treeavg {

// Bad command-line usage. CLI maps this to exit code 1.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data. CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured search cap (vertex count, memory, DP size) was exceeded.
// The message names the engine to fall back to. CLI maps this to exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace treeavg
