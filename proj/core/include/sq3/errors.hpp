#pragma once

#include <stdexcept>
#include <string>

namespace sq3 {

// Base for every error raised by the library. The CLI maps each subclass to
// its own message prefix.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input table does not reach the requested limit.
class TableTooShort : public Error {
 public:
  using Error::Error;
};

// An exact count or accumulator left the range of its integer type.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// gcd(a, q) > 1 where the operation needs a reduced fraction a/q.
class NotCoprime : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain (s <= 1 for zeta, N < 3, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class CheckpointExceedsTable : public Error {
 public:
  using Error::Error;
};

// A quantity that must be real came out with a non-negligible imaginary part.
// This signals an evaluation bug, not bad input.
class ImaginaryResidue : public Error {
 public:
  using Error::Error;
};

// Malformed serialized table or series.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace sq3
