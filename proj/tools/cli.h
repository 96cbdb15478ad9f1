#ifndef CRP_TOOLS_CLI_H_
#define CRP_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace crp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

// Runs the `crp` command line. `args` excludes the program name. Results go
// to `out`, diagnostics to `err`.
//
//   validate <file>
//   capacity <file> [--format table|json]
//   balance <file> --target N [--format table|json]
//   lp <file> [--format table|json]
//   vsm <file> [--format table|json]
//   compare <current> <future> [--format table|json]
//   serve --port P --line <file> [--host H] [--snapshot F]
//         [--allow-dev-origin] [--ui-dir D]
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace crp::cli

#endif  // CRP_TOOLS_CLI_H_
