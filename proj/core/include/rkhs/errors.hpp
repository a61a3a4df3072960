#pragma once

#include <stdexcept>
#include <string>

namespace rkhs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point lies outside the kernel's domain. The message names the offending
// coordinate.
struct DomainError : Error {
  using Error::Error;
};

// Bad construction parameters (alpha < 0, nonpositive moment, size mismatch,
// duplicate points, ...). Raised at construction time, never during eval.
struct ValidationError : Error {
  using Error::Error;
};

// A quantity the underlying space leaves undefined (pairing against a zero
// kernel function, distance in a subspace whose kernel vanishes there).
struct UndefinedValue : Error {
  using Error::Error;
};

// Gram factorization failed beyond what the jitter policy can absorb.
struct ConditioningError : Error {
  using Error::Error;
};

// A power evaluation crossed the negative real axis; the principal branch
// would be discontinuous along the diagonal-connected path.
struct BranchError : Error {
  using Error::Error;
};

// Operation requested for a family that does not support it (non-NP family
// asked for a maximal multiplier, unproven monotonicity claim, ...).
struct UnsupportedError : Error {
  using Error::Error;
};

// Two independent computation routes disagreed beyond tolerance.
struct InconsistencyError : Error {
  using Error::Error;
};

// Extremal problem degenerates (delta(z, w) = 0).
struct DegenerateError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace rkhs
