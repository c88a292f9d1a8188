#pragma once

#include <stdexcept>
#include <string>

namespace entropic {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Format,
  Domain,
  Incomplete,
};

/// Exception carried by every fallible core operation. The C API maps
/// `kind()` onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entropic
