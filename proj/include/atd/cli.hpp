#pragma once

#include <iosfwd>

namespace atd {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2, kExitInternal = 3 };

/// Entry point for the `atd` tool. Errors are reported on `err` as one line:
///   error kind=<kind> field=<field> message="<text>"
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atd
