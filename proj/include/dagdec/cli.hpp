#ifndef DAGDEC_CLI_HPP
#define DAGDEC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dagdec {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInfeasible = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Result
/// documents go to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace dagdec

#endif  // DAGDEC_CLI_HPP
