#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eeguide {

// Broad failure categories; the CLI maps each onto a distinct exit code.
enum class ErrorKind {
  kIo,
  kValidation,
  kConfig,
  kLlm,
  kUsage,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace eeguide
