#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regconst {

enum class ErrorCategory {
  validation,  // malformed mathematical input (non-normal subgroup, bad action, ...)
  resource,    // size limits exceeded
  data,        // missing or inconsistent arithmetic data
  syntax,      // parse errors in the group / lattice mini-languages
  usage,       // command-line misuse
  io,          // file access and JSON structure
  internal,    // violated internal identity; always a bug
};

std::string_view category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace regconst
