#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace wdiv::cli {

/// Runs the command line (without the program name). Exit codes: 0 success,
/// 1 argument errors, 2 numeric or budget failures.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(std::span<const std::string> args);

/// 15 significant digits, '.' separator, no locale; integral values keep ".0".
std::string format_number(double v);

}  // namespace wdiv::cli
