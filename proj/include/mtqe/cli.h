#ifndef MTQE_CLI_H_
#define MTQE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace mtqe {

// Exit codes: 0 success, 2 usage or contract error, 1 internal fault.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mtqe

#endif  // MTQE_CLI_H_
