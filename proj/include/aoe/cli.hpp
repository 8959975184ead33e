#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aoe {

// Command-line front end; args excludes the program name. Exit codes:
// 0 success, 1 semantic failure (e.g. `check` on non-equivalent graphs),
// 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace aoe
