#pragma once

#include <stdexcept>
#include <string>

namespace mbx {

// Caller violated a documented precondition (bad input, mismatched spaces, ...).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Metric lacks a property an operation needs (e.g. separated-tail for balls).
struct UnsupportedMetric : std::runtime_error {
  explicit UnsupportedMetric(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive work exceeded the stated budget; message carries partial info.
struct ResourceLimit : std::runtime_error {
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// A catalog constructor could not build a consistent object.
struct ConstructionError : std::runtime_error {
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mbx
