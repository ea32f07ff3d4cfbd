#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiltkit::cli {

/// Runs the command line against the given streams and returns the exit
/// status: 0 success / verdict holds, 1 fails-with-witness, 2 usage or
/// parse error, 3 enumeration or depth limit hit.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tiltkit::cli
