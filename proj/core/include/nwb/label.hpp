#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace nwb {

// Boundary interaction of one step: bit i of alpha is left port i, bit j of
// beta is right port j. Widths are limited to 64 ports per side.
struct step_label {
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;

    [[nodiscard]] bool is_epsilon() const { return alpha == 0 && beta == 0; }
    auto operator<=>(const step_label&) const = default;
};

inline constexpr std::size_t max_boundary_width = 64;

// "10/1": character i is bit i.
[[nodiscard]] inline std::string to_string(const step_label& l, std::size_t left, std::size_t right)
{
    std::string s;
    for (std::size_t i = 0; i < left; ++i) s += (l.alpha >> i & 1) ? '1' : '0';
    s += '/';
    for (std::size_t j = 0; j < right; ++j) s += (l.beta >> j & 1) ? '1' : '0';
    return s;
}

} // namespace nwb
