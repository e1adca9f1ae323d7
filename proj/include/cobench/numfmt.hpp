#pragma once

// Locale-independent number rendering shared by the text encoders.

#include <optional>
#include <string>
#include <string_view>

namespace cobench {

/// Fixed-point with `decimals` digits ("23.7", "5797.33").
std::string format_fixed(double value, int decimals);

/// Shortest round-trip representation; integral values print without a
/// fractional part ("374", "565.5").
std::string format_shortest(double value);

/// Strict parse of a whole string as a number; nullopt on any junk.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

}  // namespace cobench
