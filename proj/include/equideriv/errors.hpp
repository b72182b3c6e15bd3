#pragma once

#include <stdexcept>
#include <string>

namespace equideriv {

// Invalid input: malformed data, failed structural checks, unresolved names.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact arithmetic failure, e.g. division by zero.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size bound (group order, variable count, ...) was exceeded.
class LimitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Syntax error in a scalar or polynomial literal; column is 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : ValidationError(what + " at column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// A result contradicted a guarantee the library relies on. Seeing this
// means there is a bug in the library, not in the input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace equideriv
