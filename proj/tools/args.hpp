#pragma once

// Parsing of sweep arguments: "a:b:x2" (geometric), "a:b:+s" (arithmetic),
// comma lists, and norm indices with "inf".

#include <string>
#include <vector>

namespace csphere::cli {

/// Throws std::invalid_argument on malformed input.
std::vector<int> parse_int_range(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Like parse_real_list, but "inf" maps to +infinity.
std::vector<double> parse_norm_list(const std::string& text);

/// "AxB" -> {A, B}.
std::pair<int, int> parse_grid(const std::string& text);

} // namespace csphere::cli
