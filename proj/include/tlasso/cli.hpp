#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tlasso::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_io = 1,
    exit_validation = 2,
    exit_no_convergence = 3,
    exit_verification = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Results go to files under --out; `log` receives messages only.
int run(const std::vector<std::string>& args, std::ostream& log);

}  // namespace tlasso::cli
