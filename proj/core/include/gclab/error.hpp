#pragma once

#include <stdexcept>
#include <string>

namespace gclab {

enum class ErrorKind {
  invalid_parameter,
  invalid_input,
  capacity,
  not_applicable,
  association_violation,
  config,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` distinguishes the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace gclab
