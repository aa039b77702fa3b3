#pragma once

#include <stdexcept>
#include <string>

namespace curvedet {

// Raised when an argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a polyline is requested from a cell that has no complete chain.
class NoPolyline : public std::runtime_error {
 public:
  explicit NoPolyline(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the brute-force oracles when an instance exceeds their size guard.
class OracleGuardExceeded : public std::length_error {
 public:
  explicit OracleGuardExceeded(const std::string& what) : std::length_error(what) {}
};

}  // namespace curvedet
