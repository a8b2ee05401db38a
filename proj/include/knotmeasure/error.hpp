#pragma once

#include <stdexcept>
#include <string>

namespace km {

enum class ErrorKind {
  input,          // malformed curve, file, or argument
  degenerate,     // non-generic projection, intersecting curves, coplanar config
  resource,       // crossing budget or sampling budget exceeded
  precondition,   // operation called on the wrong kind of object
  not_divisible,  // exact polynomial division failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace km
