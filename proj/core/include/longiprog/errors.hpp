#pragma once

#include <stdexcept>
#include <string>

namespace longiprog {

// Error taxonomy shared by all modules. The CLI maps these onto its exit
// code contract: ConfigError/InputError/DomainError -> 2, IoError and
// CheckpointError -> 3, NumericError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad flag values, inconsistent layer shapes, ...
struct ConfigError : Error {
  using Error::Error;
};

// Malformed caller-supplied data (wrong tensor shape, unknown label, ...).
struct InputError : Error {
  using Error::Error;
};

// Mathematically undefined request (single-class AUC, predict time before
// a visit time, ...).
struct DomainError : Error {
  using Error::Error;
};

// Filesystem / stream failures.
struct IoError : Error {
  using Error::Error;
};

// Structured checkpoint load failure (bad magic, truncated payload, ...).
struct CheckpointError : Error {
  using Error::Error;
};

// Non-finite values where finite ones are required (diverged training,
// NaN gradient, ...).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace longiprog
