#pragma once

#include <string>
#include <string_view>

namespace flowcast {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

/// Strict full-token parse. Returns false on trailing garbage, empty input,
/// or out-of-range values.
bool try_parse_double(std::string_view text, double& out);

}  // namespace flowcast
