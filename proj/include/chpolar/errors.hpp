#pragma once

#include <stdexcept>
#include <string>

namespace chpolar {

/// Input outside the domain of an operation (bad dimension, vector not in subspace, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition of a constructor does not hold for the given data.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A result failed an internal consistency check. Indicates a bug or a
/// numerically degenerate input rather than a user error.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chpolar
