#include "supcon/error.hpp"

namespace supcon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_name: return "unknown-name";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::memory_cap_exceeded: return "memory-cap-exceeded";
    case ErrorCode::not_rank_one: return "not-rank-one";
    case ErrorCode::overflow: return "overflow-despite-normalization";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::io: return "io-error";
    case ErrorCode::malformed_csv: return "malformed-csv";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace supcon
