#pragma once

#include <string>

namespace mmdb {

/// 12 significant digits, the precision of all CLI and table output.
std::string format_num(double x);

/// Shortest representation that parses back to the same double.
std::string format_roundtrip(double x);

}  // namespace mmdb
