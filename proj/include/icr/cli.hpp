#pragma once

// Command-line front end: terms, region, derive, verify, search, project.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "icr/dist.hpp"

namespace icr::cli {

// Exit codes beyond 0 (success) and 1 (other failure).
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitFormMismatch = 3;

// `args` excludes the program name. Files named by --out/--emit are written;
// without --out, JSON goes to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// "q=2,u=2,w=2,x=2,y=2": lowercase keys set both users, Q/U1/W1/... set one
// variable. Unlisted variables default to 2. Throws std::invalid_argument.
AlphabetSpec parse_alphabets(std::string_view text);

}  // namespace icr::cli
