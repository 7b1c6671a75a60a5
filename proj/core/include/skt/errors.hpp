#pragma once

#include <stdexcept>
#include <string>

namespace skt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document or value (syntax, range, duplicate keys).
class InputError : public Error {
 public:
  InputError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A structural axiom failed: names the axiom and a concrete witness.
class ValidationError : public Error {
 public:
  ValidationError(std::string axiom, std::string witness)
      : Error(axiom + ": " + witness), axiom_(std::move(axiom)), witness_(std::move(witness)) {}
  const std::string& axiom() const { return axiom_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string axiom_;
  std::string witness_;
};

/// An operation was called with data outside its stated domain.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string precondition, const std::string& detail)
      : Error(precondition + ": " + detail), precondition_(std::move(precondition)) {}
  const std::string& precondition() const { return precondition_; }

 private:
  std::string precondition_;
};

/// Two mathematically identical computations disagreed. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace skt
