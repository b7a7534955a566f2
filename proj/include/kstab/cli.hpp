#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kstab {

/// Runs one subcommand (`args` excludes the program name). Returns the exit
/// code: 0 success, 1 a condition fails or a destabilizer is found, 2 input
/// error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstab
