#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgf::cli {

// Dispatches one command line; returns the process exit status.
// 0 success, 1 negative domain answer, 2 precondition/usage, 3 parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sgf::cli
