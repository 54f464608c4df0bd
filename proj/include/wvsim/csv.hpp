#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace wvsim {

/// Locale-independent number formatting for CSV output: 17 significant
/// digits, general format, via std::to_chars.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_number(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_number(int v) { return format_number(static_cast<std::int64_t>(v)); }

inline std::string format_number(unsigned v) {
    return format_number(static_cast<std::int64_t>(v));
}

}  // namespace wvsim
