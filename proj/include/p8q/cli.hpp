#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace p8q::cli {

/// Exit codes: 0 all checks pass, 1 a verified counterexample, 2 usage or
/// configuration error.
enum ExitCode : int { ok = 0, counterexample = 1, usage_error = 2 };

/// Environment variable naming the default output format.
inline constexpr const char* format_env = "P8Q_FORMAT";

/// Runs the command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2^a*b" with b odd; "0" for zero, plain b when a = 0, plain 2^a when b = 1.
std::string factored(const mpz_class& n);

} // namespace p8q::cli
