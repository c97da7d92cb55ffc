#pragma once

#include <stdexcept>
#include <string>

namespace rda {

enum class ErrorKind {
  InvalidDimension,
  InvalidInput,
  InvalidConfig,
  InvalidLabel,
  NotPsd,
  Numerical,
  Unsupported,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace rda
