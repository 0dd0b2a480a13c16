#pragma once

#include <stdexcept>
#include <string>

namespace flopcheck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A symbolic scalar still carries a generator that has no numeric value.
struct UnresolvedSymbol : Error {
  using Error::Error;
};

struct RingMismatch : Error {
  using Error::Error;
};

/// A proposed ring map does not send every relation of its domain to zero.
struct RelationViolation : Error {
  using Error::Error;
};

struct BranchInconsistency : Error {
  using Error::Error;
};

struct TransportError : Error {
  using Error::Error;
};

struct ExtractionError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace flopcheck
