#pragma once

#include <stdexcept>

namespace miqubo {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rejected input: bad matrices, bad files, bad arguments. CLI exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

/// Instance exceeds a hard solver/expansion limit. CLI exit code 2.
struct ProblemTooLarge : Error {
  using Error::Error;
};

struct EmptyMatrix : ValidationError {
  using ValidationError::ValidationError;
};

struct AsymmetricMatrix : ValidationError {
  using ValidationError::ValidationError;
};

struct NotPositiveDefinite : ValidationError {
  using ValidationError::ValidationError;
};

struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct IndexOutOfRange : ValidationError {
  using ValidationError::ValidationError;
};

struct InvalidCardinality : ValidationError {
  using ValidationError::ValidationError;
};

struct InsufficientSamples : ValidationError {
  using ValidationError::ValidationError;
};

struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace miqubo
