#pragma once

#include <ostream>

namespace hsc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitRejected = 3,
  kExitIo = 4,
};

/// Entry point of the `hsc` tool. Failures print one machine-readable line
///   error=<usage|crypto|decode|io|internal> code=<name> message=<text>
/// to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsc::cli
