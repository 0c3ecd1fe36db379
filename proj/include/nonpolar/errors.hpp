#pragma once

#include <stdexcept>
#include <string>

namespace nonpolar {

/// Base class of every error raised by the engine. The CLI maps any of
/// these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFormError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(std::string symbol)
      : Error("unknown symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}
  UnknownSymbolError(std::string symbol, const std::string& message)
      : Error(message), symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class CyclicSubstitutionError : public Error {
 public:
  using Error::Error;
};

class MissingBindingError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class JetOrderError : public Error {
 public:
  using Error::Error;
};

class AnsatzError : public Error {
 public:
  AnsatzError(std::string atom, const std::string& message)
      : Error(message), atom_(std::move(atom)) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

class NoClosedFormError : public Error {
 public:
  using Error::Error;
};

class SingularTransformationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace nonpolar
