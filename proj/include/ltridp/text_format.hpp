#pragma once

#include <string>

namespace ltridp {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Throws FormatError when text is not a complete number.
double parse_double(const std::string& text);

}  // namespace ltridp
