#ifndef PANELRANK_CLI_HPP
#define PANELRANK_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace panelrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// `key = value` lines; `#` starts a comment; values may be double-quoted.
/// Keys mirror the long flag names without dashes (threshold, variant, ...).
std::map<std::string, std::string> parse_config(std::string_view text);

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace panelrank::cli

#endif
