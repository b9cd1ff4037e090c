#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nwb::cli {

// Exit codes: 0 affirmative or success, 1 negative verdict, 2 error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_error = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nwb::cli
