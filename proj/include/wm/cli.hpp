#pragma once

#include <string>
#include <vector>

namespace wm {

// Exit codes: 0 success, 2 parse error, 3 budget exhausted, 4 internal
// invariant failure.  Output goes to the given streams so tests can run
// the CLI in-process.
int run_cli(const std::vector<std::string>& args, std::string& out,
            std::string& err);

// argv convenience wrapper writing to stdout/stderr.
int run_cli_main(int argc, char** argv);

}  // namespace wm
