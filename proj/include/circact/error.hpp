#pragma once

#include <stdexcept>
#include <string>

namespace circact {

// Base of every error raised by the library. User-facing tools catch this and
// turn it into a diagnostic; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class NotHermitian : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class SupportOverflow : public Error {
public:
  using Error::Error;
};

class ConstraintViolation : public Error {
public:
  using Error::Error;
};

class NotSimultaneouslyDiagonalizable : public Error {
public:
  using Error::Error;
};

class AmbiguousSlot : public Error {
public:
  using Error::Error;
};

class DecompositionFailure : public Error {
public:
  using Error::Error;
};

/// Malformed JSON input. `path()` is a JSON pointer to the offending node.
class SchemaError : public Error {
public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace circact
