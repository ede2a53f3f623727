#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace supcon {

enum class ErrorCode {
  unknown_name,
  dimension_mismatch,
  memory_cap_exceeded,
  not_rank_one,
  overflow,
  invalid_argument,
  io,
  malformed_csv,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace supcon
