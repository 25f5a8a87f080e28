#pragma once

#include <stdexcept>
#include <string>

namespace mband {

/// A vector set that must be linearly independent is not.
class LinearDependenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constant matrix that must be inverted is singular.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The input lies outside what the construction supports.
class UnsupportedCaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mband
