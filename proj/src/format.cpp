#include "fsdaudit/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fsdaudit {

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "NA" : (value > 0 ? "inf" : "-inf");
  char buf[512];
  // to_chars prints the exact binary value correctly rounded; ties go to even.
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw std::runtime_error("format_fixed: value too large");
  std::string out(buf, ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_shortest failed");
  return {buf, ptr};
}

}  // namespace fsdaudit
