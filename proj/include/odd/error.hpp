#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace odd {

enum class ErrorCode {
  path_collision,
  unknown_parent,
  unknown_path,
  unknown_taxonomy,
  incompatible_taxonomies,
  unbound_reference,
  type_error,
  constraint_violation,
  role_mismatch,
  duplicate_id,
};

std::string_view to_string(ErrorCode code);

/// Raised by operations whose failures are not returned as data.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace odd
