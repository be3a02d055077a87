#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace primeperiod::cli {

// Flat "key = value" lines; '#' starts a comment, blank lines are skipped.
// Throws InvalidArgumentError on a line without '=' or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_flat_config(std::string_view text);

// Entry point behind the executable. Exit codes: 0 success, 1 usage error,
// 2 computation error.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace primeperiod::cli
