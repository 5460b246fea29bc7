#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anmult {

/// Raised for malformed or out-of-domain inputs (bad labels, rank too small, guards).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an exact check that must hold fails (non-integral multiplicities,
/// reconstruction or validation failures).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LinearSystemError : public DomainError {
 public:
  enum class Kind { inconsistent, underdetermined };

  LinearSystemError(Kind kind, std::size_t rank, std::size_t nullity)
      : DomainError(kind == Kind::inconsistent
                        ? std::string("no solution")
                        : "underdetermined (rank " + std::to_string(rank) + ", nullity " +
                              std::to_string(nullity) + ")"),
        kind_(kind),
        rank_(rank),
        nullity_(nullity) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t nullity() const noexcept { return nullity_; }

 private:
  Kind kind_;
  std::size_t rank_;
  std::size_t nullity_;
};

}  // namespace anmult
