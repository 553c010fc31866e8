#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hzx {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input. `position` is a byte offset for Pauli strings
/// and a 1-based line number for circuit files.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

class WireOutOfRange : public Error {
public:
  using Error::Error;
};

class ControlEqualsTarget : public Error {
public:
  using Error::Error;
};

class NotApplicable : public Error {
public:
  using Error::Error;
};

class AlreadyTerminal : public Error {
public:
  using Error::Error;
};

class TooManyLegs : public Error {
public:
  using Error::Error;
};

class TooManyWires : public Error {
public:
  using Error::Error;
};

}  // namespace hzx
