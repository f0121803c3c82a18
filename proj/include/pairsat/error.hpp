#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairsat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error in formula, model or domino text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A variable used with the wrong sort (e.g. `@f in x`).
class SortError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A configured size, depth or candidate limit was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An assignment violates pair-awareness or a variant touches variables outside W.
class InvalidInterpretation : public Error {
 public:
  using Error::Error;
};

/// Evaluation could not proceed (unassigned variable, failed decomposition).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairsat
