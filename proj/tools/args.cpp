#include "args.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csphere::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return out;
        }
        start = pos + 1;
    }
}

int to_int(const std::string& s)
{
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    return v;
}

double to_real(const std::string& s)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<int> parse_int_range(const std::string& text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty list");
    }
    std::vector<int> out;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(to_int(parts[0]));
            continue;
        }
        if (parts.size() != 3 || parts[2].size() < 2) {
            throw std::invalid_argument("range must look like a:b:x2 or a:b:+s, got '" + item + "'");
        }
        const int a = to_int(parts[0]);
        const int b = to_int(parts[1]);
        const int step = to_int(parts[2].substr(1));
        if (b < a) {
            throw std::invalid_argument("range end below start in '" + item + "'");
        }
        if (parts[2][0] == 'x') {
            if (step < 2 || a < 1) {
                throw std::invalid_argument("geometric range needs start >= 1 and factor >= 2");
            }
            for (long long v = a; v <= b; v *= step) {
                out.push_back(static_cast<int>(v));
            }
        } else if (parts[2][0] == '+') {
            if (step < 1) {
                throw std::invalid_argument("arithmetic range needs step >= 1");
            }
            for (long long v = a; v <= b; v += step) {
                out.push_back(static_cast<int>(v));
            }
        } else {
            throw std::invalid_argument("range step must start with 'x' or '+', got '" + item + "'");
        }
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty list");
    }
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        out.push_back(to_real(item));
    }
    return out;
}

std::vector<double> parse_norm_list(const std::string& text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty list");
    }
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        out.push_back(item == "inf" ? std::numeric_limits<double>::infinity() : to_real(item));
    }
    return out;
}

std::pair<int, int> parse_grid(const std::string& text)
{
    const auto parts = split(text, 'x');
    if (parts.size() != 2) {
        throw std::invalid_argument("grid must look like 32x32, got '" + text + "'");
    }
    const int a = to_int(parts[0]);
    const int b = to_int(parts[1]);
    if (a < 1 || b < 1) {
        throw std::invalid_argument("grid sizes must be positive");
    }
    return {a, b};
}

} // namespace csphere::cli
