#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tnc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number of the offence.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The cooperative deadline passed before the work finished.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// Contraction would materialize a tensor larger than the configured cap.
class MemoryCapError : public Error {
 public:
  MemoryCapError(const std::string& what, int rank) : Error(what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

/// Raised when work is abandoned because a stop was requested.
class Cancelled : public Error {
 public:
  Cancelled() : Error("cancelled") {}
};

}  // namespace tnc
