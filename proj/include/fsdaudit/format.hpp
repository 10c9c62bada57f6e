#pragma once

#include <string>

namespace fsdaudit {

/// Fixed-point with `decimals` places. Exact binary ties round half to even;
/// negative zero prints without a sign.
std::string format_fixed(double value, int decimals);

/// Shortest text that round-trips to the same double.
std::string format_shortest(double value);

}  // namespace fsdaudit
