#pragma once

#include <string>
#include <string_view>

namespace consensus {

// Locale-independent number formatting. The decimal separator is always '.'.

/// Shortest representation that round-trips to the same double.
std::string fmt_real(double v);

/// Fixed number of significant digits (general notation).
std::string fmt_real(double v, int significant);

/// Parses a full token as a double; returns false on trailing garbage.
bool parse_real(std::string_view token, double& out);

}  // namespace consensus
