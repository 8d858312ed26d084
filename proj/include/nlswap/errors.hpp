#pragma once

#include "nlswap/rational.hpp"

#include <stdexcept>
#include <string>

namespace nlswap {

/// Input text or file that does not match a documented schema.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Coupler application produced a negative entry; the inputs were not
/// genuine boxes.
class InvalidOutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A computed branch probability fell outside [0, 1]. Carries the value.
class InvalidProbabilityError : public std::runtime_error {
  public:
    InvalidProbabilityError(const std::string& what, Rational value)
        : std::runtime_error(what), value_(std::move(value)) {}
    const Rational& value() const { return value_; }

  private:
    Rational value_;
};

/// A conditioned box was requested for a zero-probability branch.
class DegenerateBranchError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation that requires genuine boxes was given a box outside the
/// genuine polytope.
class NotGenuineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The coupler constraint system could not be solved or verified.
/// This indicates a constraint-encoding bug, not a data error.
class InfeasibleError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace nlswap
