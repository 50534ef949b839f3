#include "tilecount/error.hpp"

namespace tilecount {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BasisMismatch: return "BASIS_MISMATCH";
    case ErrorCode::SignUndecided: return "SIGN_UNDECIDED";
    case ErrorCode::NonpositiveArea: return "NONPOSITIVE_AREA";
    case ErrorCode::InconsistentProfile: return "INCONSISTENT_PROFILE";
    case ErrorCode::LimitExceeded: return "LIMIT_EXCEEDED";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::NonzeroConstInQuasiInv: return "NONZERO_CONST_IN_QUASIINV";
    case ErrorCode::UnboundedSupport: return "UNBOUNDED_SUPPORT";
    case ErrorCode::SizeLimit: return "SIZE_LIMIT";
    case ErrorCode::LatticeDegenerate: return "LATTICE_DEGENERATE";
    case ErrorCode::NotPrime: return "NOT_PRIME";
    case ErrorCode::NotRefinement: return "NOT_REFINEMENT";
    case ErrorCode::BadBase: return "BAD_BASE";
    case ErrorCode::InsufficientData: return "INSUFFICIENT_DATA";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Cancelled: return "CANCELLED";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tilecount
