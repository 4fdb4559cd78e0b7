#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symplecta {

// Runs the command-line front end on args (without the program name). Exit
// codes: 0 success, 1 malformed input, 2 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symplecta
