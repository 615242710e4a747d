#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seriation::cli {

/// Parses the command line and dispatches to a command; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the program name omitted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seriation::cli
