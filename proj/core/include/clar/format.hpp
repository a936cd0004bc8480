#pragma once

#include <string>

namespace clar {

/// Shortest decimal text that parses back to exactly `v` ("." separator,
/// locale independent).
std::string format_real(double v);

/// Strict locale-independent parse of a whole string; throws ValidationError.
double parse_real(const std::string& text);
long long parse_integer(const std::string& text);

}  // namespace clar
