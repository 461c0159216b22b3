#ifndef QIFKIT_TOOLS_CLI_H_
#define QIFKIT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace qifkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitValidation = 2,
  kExitVerificationFailed = 3,
};

// Runs one command. args excludes the program name. Reports go to out (or
// the --out file); diagnostics go to err.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qifkit::cli

#endif  // QIFKIT_TOOLS_CLI_H_
