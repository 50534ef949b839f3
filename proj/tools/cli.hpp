#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tilecount/error.hpp"

namespace tilecount::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kResourceLimit = 3,
  kPrecision = 4,
};

int exit_code_for(ErrorCode code);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tilecount::cli
