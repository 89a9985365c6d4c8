#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcid {

/// Invalid input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An oracle enumeration would exceed its size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pcid
