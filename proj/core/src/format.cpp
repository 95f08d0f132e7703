#include "flrw/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace flrw {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int digits) {
    std::array<char, 64> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
    std::string out(buf.data(), res.ptr);
    if (out == "-0" || out.find_first_not_of("-0.") == std::string::npos) {
        // normalise negative zero
        if (!out.empty() && out.front() == '-') {
            out.erase(0, 1);
        }
    }
    return out;
}

std::string csv_row(std::initializer_list<std::string_view> fields) {
    std::string line;
    bool first = true;
    for (auto f : fields) {
        if (!first) {
            line += ',';
        }
        line += f;
        first = false;
    }
    line += '\n';
    return line;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf.data(), 16);
}

}  // namespace flrw
