#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weilstar {

constexpr int kReportSchemaVersion = 1;

// Runs one command line (without the program name). Returns 0 when every
// check passes, 1 on a verification failure, 2 on invalid configuration.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weilstar
