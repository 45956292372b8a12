#pragma once

#include <iosfwd>
#include <string>

#include "doqf/config.hpp"

namespace doqf {

// Executes one resolved command. Results go to config.out when set, else to out.
// Throws InvalidArgument or NumericalError.
void run(const RunConfig& config, std::ostream& out);

// Renders the command's CSV without writing it anywhere.
std::string render(const RunConfig& config);

// Full command-line entry point; returns the process exit status
// (0 ok, 2 invalid arguments, 3 numerical failure, 1 other errors).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace doqf
