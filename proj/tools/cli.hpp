#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sa::cli {

// Runs the `sa` command line. args excludes the program name. Returns the exit
// code: 0 on success or when a checked claim holds, 1 when it fails, 2 on
// usage, parse or validation errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace sa::cli
