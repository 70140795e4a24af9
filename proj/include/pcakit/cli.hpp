#ifndef PCAKIT_CLI_HPP
#define PCAKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pcakit::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kDataError = 2,
    kNumericalFailure = 3,
};

/// Runs one command line. `args` excludes the program name. Help text goes
/// to `out` and diagnostics to `err`; data only ever goes to the files named
/// on the command line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pcakit::cli

#endif
