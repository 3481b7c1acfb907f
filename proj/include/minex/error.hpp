#pragma once

#include <stdexcept>
#include <string>

namespace minex {

// Failure categories; the CLI maps each to a process exit code.
enum class ErrorKind {
  kInvalidArgument,     // malformed input, violated precondition
  kCapacity,            // a configured size cap was exceeded
  kInsufficientRadius,  // the finite ball is too small for the construction
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(what);
}

}  // namespace minex
