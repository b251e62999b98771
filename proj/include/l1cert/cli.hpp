#pragma once

#include <ostream>

namespace l1cert {

// Exit codes: 0 success, 2 bad arguments, 3 resource guard, 4 solver failure.
enum ExitCode : int { kExitOk = 0, kExitArgument = 2, kExitResource = 3, kExitSolver = 4 };

// Entry point of the l1cert command line tool. Reports go to `out`, the
// single-line error reason to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l1cert
