#include "dunkl/error.hpp"

namespace dunkl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::range: return "range";
    case ErrorCode::parse: return "parse";
    case ErrorCode::not_differentiable: return "not_differentiable";
    case ErrorCode::depth_exceeded: return "depth_exceeded";
    case ErrorCode::plan_inadequate: return "plan_inadequate";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dunkl
