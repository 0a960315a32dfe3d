#pragma once

#include <stdexcept>
#include <string>

namespace patchcat {

/// Operands live in different rings (or over different base fields).
struct RingMismatch : std::invalid_argument {
  explicit RingMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Inversion requested for an element that is not a unit of its ring.
struct NotAUnit : std::domain_error {
  explicit NotAUnit(const std::string& what) : std::domain_error(what) {}
};

/// Operation not defined for this ring kind (e.g. SNF outside the PID kinds).
struct UnsupportedRing : std::invalid_argument {
  explicit UnsupportedRing(const std::string& what) : std::invalid_argument(what) {}
};

/// Dimension or arity mismatch in matrices, functors or diagrams.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Enumeration work exceeded the configured budget (finite-category search).
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A certified degree bound was exhausted, including escalation retries.
struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Object does not belong to the patching context it was used with.
struct ContextMismatch : std::invalid_argument {
  explicit ContextMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix that must be invertible is not.
struct NonInvertible : std::domain_error {
  explicit NonInvertible(const std::string& what) : std::domain_error(what) {}
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct InternalCheckFailure : std::logic_error {
  explicit InternalCheckFailure(const std::string& what) : std::logic_error(what) {}
};

/// Malformed input (JSON or CLI level); carries a location hint when known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace patchcat
