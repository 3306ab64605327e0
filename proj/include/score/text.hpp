// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace score::text {

/// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Strips one trailing '\r' (CRLF files).
std::string_view chomp_cr(std::string_view s);

// Whole-token parsers: the entire input must be consumed.
std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

/// Shortest representation that parses back to the same double.
/// Infinities print as `inf` / `-inf`.
std::string format_number(double x);

/// Like format_number but never uses exponent notation.
std::string format_fixed(double x);

std::string_view trim(std::string_view s);

}  // namespace score::text
