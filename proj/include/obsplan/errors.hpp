#pragma once

#include <stdexcept>
#include <string>

namespace obsplan {

/// Raised for invalid inputs: bad configuration, violated preconditions.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested quality threshold lies outside n*q_min <= q* <= n*q_max.
class InfeasibleAssumption : public DomainError {
 public:
  using DomainError::DomainError;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace obsplan
