#pragma once

#include <stdexcept>
#include <string>

namespace priv {

// Dimension / shape mismatches on numeric containers.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation called in the wrong order (e.g. backward before forward).
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

// Non-finite value where a finite one is required.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad UTF-8, bad digits, unknown template, bad config.
struct FormatError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ciphertext failed authentication or the vault key is wrong.
struct VaultAuthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lookup miss (unknown pseudonym, unknown id). Distinct from permission denial.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller's role does not grant the operation.
struct PermissionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A declared invariant was violated at runtime; maps to CLI exit code 3.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace priv
