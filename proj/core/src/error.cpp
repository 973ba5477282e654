#include "scorenet/error.h"

namespace scorenet {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kMalformedInput: return "malformed_input";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace scorenet
