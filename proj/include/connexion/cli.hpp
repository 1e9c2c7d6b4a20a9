#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace connexion {

// Command-line front end. args excludes the program name. Exit codes:
// 0 success, 1 domain error (or a failed verification), 2 malformed
// input.
int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace connexion
