#pragma once

#include <stdexcept>
#include <string>

namespace invgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Ill-sorted term, arity mismatch or non-linear multiplication.
class SortError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Division or modulo by zero during concrete evaluation.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// The solver process crashed, desynchronized, or answered something we
/// could not interpret. The owning session is poisoned afterwards.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The solver answered `unknown` or did not answer within the query timeout.
class SolverUnknown : public Error {
 public:
  using Error::Error;
};

}  // namespace invgen
