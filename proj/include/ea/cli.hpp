#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ea::cli {

// Exit codes: 0 success / property holds, 1 property fails or inputs not
// isomorphic, 2 input or usage error, 3 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ea::cli
