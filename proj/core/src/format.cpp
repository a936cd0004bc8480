#include "clar/format.hpp"

#include <charconv>
#include <system_error>

#include "clar/error.hpp"

namespace clar {

std::string format_real(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || first == last)
        throw ValidationError("not a number: '" + text + "'");
    return v;
}

long long parse_integer(const std::string& text) {
    long long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || first == last)
        throw ValidationError("not an integer: '" + text + "'");
    return v;
}

}  // namespace clar
