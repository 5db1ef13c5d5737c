#pragma once

#include <stdexcept>
#include <string>

namespace ddpp {

enum class ErrorKind {
  InvalidInput,
  PreconditionViolation,
  SizeLimit,
  InvariantViolation,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Exception carrying one of the library's error categories. Verdict-style
/// outcomes (infeasible, budget exhausted, stage failure) are returned as
/// values; this type is reserved for contract breaches and hard limits.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ddpp
