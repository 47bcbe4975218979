#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uniprior {

// Exit statuses of the command-line front-end.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitVerifyFailed = 2,
    kExitPartial = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uniprior
