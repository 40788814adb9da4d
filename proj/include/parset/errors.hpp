#pragma once

#include <stdexcept>
#include <string>

namespace parset {

// Error taxonomy mirrors the CLI exit codes:
//   2 = schema error, 3 = geometry error, 4 = resource cap.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace parset
