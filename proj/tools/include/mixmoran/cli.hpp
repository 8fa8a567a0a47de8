#ifndef MIXMORAN_CLI_HPP
#define MIXMORAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mixmoran::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
    kAborted = 4,
};

// Runs the `moran` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixmoran::cli

#endif
