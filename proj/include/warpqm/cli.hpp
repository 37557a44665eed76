#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace warpqm::cli {

enum ExitCode : int {
    kOk = 0,
    kIdentityFailure = 1,
    kConfigError = 2,
    kUnsupportedClass = 3,
    kNumericFailure = 4,
};

/// Runs one invocation of the warpqm front-end. `args` excludes the program name.
/// JSON (or CSV) goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace warpqm::cli
