#pragma once

#include <iosfwd>

namespace dtk::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidParameters = 2,
  kNumericalFailure = 3,
};

/// Entry point of the `dtk` tool, with output streams injected for testing.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dtk::cli
