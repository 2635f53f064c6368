#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elkik {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedRing : public Error {
public:
  using Error::Error;
};

class RingMismatch : public Error {
public:
  using Error::Error;
};

class WindowTooSmall : public Error {
public:
  using Error::Error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Syntax error in element or specifier text. `position` is the 0-based
/// byte offset of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A generator that does not exist in the ring, e.g. `u` outside E2.
class WrongGenerator : public ParseError {
public:
  using ParseError::ParseError;
};

} // namespace elkik
