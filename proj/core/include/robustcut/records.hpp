#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

namespace robustcut {

/// Shortest decimal that round-trips to the same double.
std::string format_real(double v);

/// Parses "key=value" lines; blank lines and '#' comments are skipped.
std::map<std::string, std::string> parse_key_values(std::istream& in);

double parse_real(std::string_view text, std::size_t line = 0);

}  // namespace robustcut
