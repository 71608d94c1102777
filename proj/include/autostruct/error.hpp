#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autostruct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two automata or relations that must share an alphabet do not.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Bad track index, non-permutation, symbol outside the alphabet, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed `.aut`, `.astruct` or TM specification text.
class FormatError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Unknown relation, arity mismatch, constant outside the domain, free
/// variables where a sentence is required.
class CompileError : public Error {
 public:
  using Error::Error;
};

/// An intermediate automaton exceeded the configured state cap.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message, std::string subformula = {})
      : Error(message), subformula_(std::move(subformula)) {}

  const std::string& subformula() const { return subformula_; }

 private:
  std::string subformula_;
};

/// A decided axiom or structural precondition failed; `what()` names it.
class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& message, std::string axiom = {})
      : Error(message), axiom_(std::move(axiom)) {}

  const std::string& axiom() const { return axiom_; }

 private:
  std::string axiom_;
};

}  // namespace autostruct
