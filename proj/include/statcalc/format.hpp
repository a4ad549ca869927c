#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <system_error>

namespace statcalc {

/// Shortest decimal text that parses back to the same double.
inline std::string format_real(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc{}) return std::to_string(v);
    return std::string(buf.data(), res.ptr);
}

/// Rounds half away from zero to `decimals` places, deciding ties in decimal
/// rather than binary: the value is first reduced to 15 significant digits
/// (what a spreadsheet shows), so 0.33835 stored as 0.33834999999999998
/// still rounds up to 0.3384.
inline double round_half_away(double v, int decimals) {
    if (!std::isfinite(v) || v == 0.0) return v;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.14e", v);
    double sig = std::strtod(buf.data(), nullptr);
    double scale = std::pow(10.0, decimals);
    // sig * scale may land a hair below .5; re-snap it to 15 digits as well.
    double scaled = sig * scale;
    std::snprintf(buf.data(), buf.size(), "%.14e", scaled);
    scaled = std::strtod(buf.data(), nullptr);
    double rounded = std::floor(std::fabs(scaled) + 0.5);
    return std::copysign(rounded / scale, v);
}

/// Fixed-point text with exactly `decimals` places, e.g. "0.3850".
inline std::string format_fixed(double v, int decimals) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, round_half_away(v, decimals));
    return buf.data();
}

}  // namespace statcalc
