#ifndef HV_ERRORS_HPP
#define HV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hv {

/// Bad bounds, unknown lemma ids, mismatched specs and similar caller errors.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A Whittaker map that is not admissible for the requested module.
class InvalidPsiError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of room: descent stuck, nilpotency cap hit.
class BoundExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hv

#endif  // HV_ERRORS_HPP
