#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dunkl {

/// Machine-readable failure categories. The CLI maps these onto exit codes
/// and report fields, so the string forms are part of the report schema.
enum class ErrorCode {
  invalid_argument,
  range,            // series or quadrature budget exhausted
  parse,            // function-spec / config grammar
  not_differentiable,
  depth_exceeded,   // operator iteration cap
  plan_inadequate,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dunkl
