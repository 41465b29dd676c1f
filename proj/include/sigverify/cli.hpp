#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigverify {

inline constexpr int kExitGenuine = 0;
inline constexpr int kExitForgery = 1;
inline constexpr int kExitError = 2;

/// Runs one `sigverify` subcommand. `args` excludes the program name.
/// Returns 0 on success (and for a genuine verdict), 1 for a forgery
/// verdict, 2 on any error. Failures print a single line
/// "error: <code>: <message>" to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigverify
