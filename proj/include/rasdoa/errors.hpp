#pragma once

#include <stdexcept>
#include <string>

namespace rasdoa {

// Bad geometry parameters, malformed inputs, violated preconditions.
// The CLI maps this family to exit code 2.
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedFamily : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class HypothesisViolation : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class NoValidSplit : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class MissingZero : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class LagTooLarge : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class LengthMismatch : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class NonHermitian : public InvalidParameters {
 public:
  using InvalidParameters::InvalidParameters;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Noise subspace would be empty: L >= dim(R_ss). Exit code 3 at the CLI.
class TooManySources : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant (e.g. a virtual lag with no contributing entry).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rasdoa
