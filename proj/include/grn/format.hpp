#pragma once

#include <string>
#include <string_view>

namespace grn {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_shortest(double v);

/// `v` with `digits` significant digits (%.Ng style); inf/nan as inf, -inf, nan.
std::string format_significant(double v, int digits);

/// Strict finite-double parse of the whole token. Returns false on junk.
bool parse_double(std::string_view token, double& out);

std::string_view trim(std::string_view s);

}  // namespace grn
