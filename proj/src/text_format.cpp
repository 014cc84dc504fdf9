#include "ltridp/text_format.hpp"

#include <array>
#include <charconv>

#include "ltridp/errors.hpp"

namespace ltridp {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw FormatError("not a number: '" + text + "'");
  }
  return value;
}

}  // namespace ltridp
