#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace copdyn {

// Magnitudes above this guard are treated as runaway growth rather than
// propagated as infinities.
inline constexpr double kOverflowGuard = 1e150;

/// Malformed input text; `offset` is the byte position of the first bad token.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// An identifier that is not `x` and not one of the supported functions.
class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : SyntaxError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation left the domain of a sub-expression (log of non-positive
/// value, division by zero).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string message, double at)
      : std::runtime_error(std::move(message)), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// An intermediate magnitude exceeded kOverflowGuard.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(std::string message)
      : std::runtime_error(std::move(message)) {}
};

/// Jets of different orders were combined.
class OrderMismatch : public std::logic_error {
 public:
  OrderMismatch(int lhs, int rhs)
      : std::logic_error("jet order mismatch: " + std::to_string(lhs) +
                         " vs " + std::to_string(rhs)) {}
};

class PreconditionViolated : public std::logic_error {
 public:
  explicit PreconditionViolated(std::string message)
      : std::logic_error(std::move(message)) {}
};

class InsufficientSamples : public std::invalid_argument {
 public:
  explicit InsufficientSamples(std::string message)
      : std::invalid_argument(std::move(message)) {}
};

}  // namespace copdyn
