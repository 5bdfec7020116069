#pragma once

#include <stdexcept>
#include <string>

namespace weil {

/// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A generator set that does not present a Weil algebra (degree < 2,
/// or some variable is not nilpotent).
struct InvalidIdeal : Error {
  using Error::Error;
};

/// A substitution that does not kill the source ideal.
struct IllDefinedHom : Error {
  using Error::Error;
};

/// Mixing values that live over different coefficient contexts.
struct ContextMismatch : Error {
  using Error::Error;
};

/// Dimension / degree bookkeeping failures (wrong coordinate count,
/// table of the wrong size, permutation of the wrong length, ...).
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Strong-difference operands that do not agree where they must.
struct AgreementViolation : Error {
  using Error::Error;
};

/// The square handed to the pullback checker does not commute.
struct NonCommutingSquare : Error {
  using Error::Error;
};

/// Structural checks are exact-only; float coefficients are refused.
struct FloatContextRejected : Error {
  using Error::Error;
};

/// Expression DAG that cannot be evaluated (bad arity, free variable,
/// transcendental primitive over exact rationals).
struct MalformedMap : Error {
  using Error::Error;
};

/// Fixture text that does not parse; carries a 1-based position.
struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Bad harness configuration (unknown suite, no suites selected, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace weil
