#ifndef QSHADOW_CLI_HPP
#define QSHADOW_CLI_HPP

#include <iosfwd>

namespace qshadow {

// Full command-line surface. Exit code contract: 0 = ok, 1 = a verification
// ran and the mathematical check failed, 2 = error (bad input, precondition
// violation, insufficient precision). Result payloads go to `out`
// (human-readable table by default, JSON with --json); progress and error
// messages go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qshadow

#endif
