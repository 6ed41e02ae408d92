#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "recdiv/polyfield.hpp"

namespace recdiv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInternal = 2, kCheckFailed = 3 };

// Comma-separated integers, e.g. "1,-1,-1,-1"; throws std::invalid_argument.
std::vector<i64> parse_int_list(const std::string& text);
// Highest degree first; throws std::invalid_argument("characteristic polynomial must be monic").
IntPoly parse_charpoly(const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace recdiv::cli
