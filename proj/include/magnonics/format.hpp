// format.hpp — shortest round-trip decimal formatting.

#pragma once

#include <charconv>
#include <string>

namespace magnonics {

inline std::string format_number(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

}  // namespace magnonics
