#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aczel {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operands built over different state spaces.
class SpaceMismatch : public Error {
public:
  using Error::Error;
};

class UnknownVariable : public Error {
public:
  explicit UnknownVariable(const std::string &name)
      : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string &name() const { return name_; }

private:
  std::string name_;
};

class UnknownValue : public Error {
public:
  using Error::Error;
};

// Malformed trace: a terminal step not in last position, or too long.
class TraceError : public Error {
public:
  using Error::Error;
};

// Node-count or fixed-point iteration cap reached.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace aczel
