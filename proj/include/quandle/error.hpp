#pragma once

#include <stdexcept>
#include <string>

namespace quandle {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error {
public:
  using Error::Error;
};

class InvalidPermutation : public Error {
public:
  using Error::Error;
};

class NotASubgroup : public Error {
public:
  using Error::Error;
};

/// A requested order or degree exceeds the configured search bound.
class BoundExceeded : public Error {
public:
  using Error::Error;
};

class NotConnected : public Error {
public:
  using Error::Error;
};

class GenerationFailure : public Error {
public:
  using Error::Error;
};

/// Malformed input data (JSON shape, grid text).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A postcondition the mathematics guarantees did not hold.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace quandle

#define QUANDLE_ENSURE(cond, msg)                                              \
  do {                                                                         \
    if (!(cond))                                                               \
      throw ::quandle::InternalError(std::string("postcondition failed: ") +   \
                                     (msg));                                   \
  } while (0)
