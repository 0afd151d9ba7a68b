#pragma once

#include <stdexcept>
#include <string>

namespace qcdl {

/// Base of every error raised by the library. Each subclass names the
/// violated contract; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionNotMet : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class EpsilonOutOfRange : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

class LambdaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Raised when K is larger than the envelope machinery admits for a point.
class KTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace qcdl
