#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace oclp {

/// Shortest round-trip decimal form. Used for every float the library emits
/// (labels, CSV, reports) so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Full-string strict parse; nullopt on trailing junk or empty input.
inline std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

}  // namespace oclp
