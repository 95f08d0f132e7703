#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

namespace flrw {

/// Shortest representation that round-trips through strtod; "nan", "inf",
/// "-inf" for non-finite values.
std::string format_double(double value);

/// Fixed-point rendering used for SVG coordinates.
std::string format_fixed(double value, int digits);

/// Comma-joined CSV row terminated by '\n'.
std::string csv_row(std::initializer_list<std::string_view> fields);

/// 64-bit FNV-1a digest rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace flrw
