#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace posetk {

// Raised for malformed text input (poset, covering and matrix files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when well-formed input violates a mathematical precondition:
// non-T0 bases, non-unimodular matrices, diagrams that have not stabilised.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotUnimodularError : public DomainError {
 public:
  explicit NotUnimodularError(std::int64_t det)
      : DomainError("matrix is not unimodular: det(T) = " + std::to_string(det)),
        determinant_(det) {}

  std::int64_t determinant() const noexcept { return determinant_; }

 private:
  std::int64_t determinant_;
};

}  // namespace posetk
