#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

namespace shuttle::text {

inline std::string fixed(double value, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << value;
    return os.str();
}

inline std::string percent(double share, int decimals = 1) {
    return fixed(100.0 * share, decimals) + "%";
}

inline std::string pad_right(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

inline std::string pad_left(std::string_view s, std::size_t width) {
    std::string out;
    if (s.size() < width) out.append(width - s.size(), ' ');
    out.append(s);
    return out;
}

}  // namespace shuttle::text
