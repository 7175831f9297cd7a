#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace crosslimit {

/// Elements of the example space X = {0, 1, 2, ...}.
using Natural = std::uint64_t;

/// Raised when an operation's precondition does not hold.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace crosslimit
