#pragma once

#include <stdexcept>
#include <string>

namespace twinfock {

/// Raised when an argument lies outside the mathematical domain of an operation
/// (N = 0, visibility outside [0,1], mismatched photon numbers, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a least-squares fit cannot be carried out on the supplied data.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twinfock
