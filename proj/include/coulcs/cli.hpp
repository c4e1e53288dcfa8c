#pragma once

// Command-line front end. Every subcommand writes one report in json, csv
// or table form; exit codes are 0 (success), 1 (a verification failed) and
// 2 (bad flags or a domain/configuration error).

#include <iosfwd>
#include <string>
#include <vector>

namespace coulcs::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on argv (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b" or "a" as an inclusive list of integers.
std::vector<std::size_t> parse_index_range(const std::string& text);
/// "a..b:m" as m equally spaced points from a to b, or "x" as one point.
std::vector<double> parse_grid(const std::string& text);
/// "x,y,z" as a list of reals.
std::vector<double> parse_list(const std::string& text);

}  // namespace coulcs::cli
