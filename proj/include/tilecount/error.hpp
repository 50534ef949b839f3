#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tilecount {

enum class ErrorCode {
  BasisMismatch,
  SignUndecided,
  NonpositiveArea,
  InconsistentProfile,
  LimitExceeded,
  SyntaxError,
  NonzeroConstInQuasiInv,
  UnboundedSupport,
  SizeLimit,
  LatticeDegenerate,
  NotPrime,
  NotRefinement,
  BadBase,
  InsufficientData,
  InvalidArgument,
  Cancelled,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace tilecount
