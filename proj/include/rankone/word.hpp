#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rankone {

// Words are std::string over '0'/'1'; plain string order is the required
// lexicographic order with 0 < 1.

inline bool is_binary_word(std::string_view w) {
    return !w.empty() &&
           std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

inline void require_binary(std::string_view w) {
    if (!is_binary_word(w)) throw std::invalid_argument("expected nonempty word over {0,1}");
}

constexpr std::int64_t kInfiniteTail = -1;

// Length of the terminal 1-run after the last 0; kInfiniteTail for 1^|w|.
inline std::int64_t tail_length(std::string_view w) {
    require_binary(w);
    auto pos = w.find_last_of('0');
    if (pos == std::string_view::npos) return kInfiniteTail;
    return static_cast<std::int64_t>(w.size() - 1 - pos);
}

inline bool all_ones(std::string_view w) { return w.find('0') == std::string_view::npos; }

inline std::string repeat(std::string_view part, std::size_t times) {
    std::string out;
    out.reserve(part.size() * times);
    for (std::size_t i = 0; i < times; ++i) out += part;
    return out;
}

inline std::string ones(std::size_t count) { return std::string(count, '1'); }

// Prefix of the infinite Fibonacci word (0 -> 01, 1 -> 0) of length >= n.
inline std::string fibonacci_word(std::size_t n) {
    std::string w = "0";
    while (w.size() < n) {
        std::string next;
        next.reserve(2 * w.size());
        for (char c : w) next += (c == '0') ? "01" : "0";
        w = std::move(next);
    }
    w.resize(n);
    return w;
}

}  // namespace rankone
