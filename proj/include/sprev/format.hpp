#pragma once

#include <string>
#include <string_view>

namespace sprev {

// Locale-independent "%.<digits>g"-style formatting; -0 prints as 0.
std::string format_sig(double value, int digits);
inline std::string format_sig6(double value) { return format_sig(value, 6); }

// Shortest string that parses back to exactly `value`.
std::string format_shortest(double value);

std::string xml_escape(std::string_view text);

// Quotes a CSV field only when it contains a comma, quote or newline.
std::string csv_quote(std::string_view field);

}  // namespace sprev
