#pragma once

#include <stdexcept>
#include <string>

namespace oscot {

/// Bad scalar argument (non-positive delta, probability outside [0,1], ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Structurally well-formed input that violates a value-level invariant
/// (masses not summing to one, unsorted atoms, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input text that cannot be parsed at all.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem trouble (unreadable or unwritable path).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oscot
