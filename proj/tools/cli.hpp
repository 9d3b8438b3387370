#pragma once

#include <iosfwd>

namespace qtspp::cli {

/// Exit statuses.
enum Status : int {
  kOk = 0,
  kCheckFailed = 1,  // a residual, fingerprint or plausibility check failed
  kUsage = 2,
  kComputation = 3,  // a library error stopped the stage
  kIo = 4,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "QTSPP_OUT";

/// Parses argv and runs one subcommand; output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qtspp::cli
