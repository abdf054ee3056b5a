#pragma once

#include <stdexcept>
#include <string>

namespace gridqaoa {

// Precondition violated by the caller (bad sizes, indices, malformed input).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a hard resource budget (qubit count, enumeration size).
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace gridqaoa
