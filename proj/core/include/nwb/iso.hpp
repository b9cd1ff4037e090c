#pragma once

#include "nwb/net.hpp"

#include <optional>
#include <vector>

namespace nwb {

enum class iso_mode {
    exact,      // preserves pre, post, source, target and contention
    structural, // ignores contention
};

struct net_iso {
    std::vector<std::size_t> place_map;      // place of a -> place of b
    std::vector<std::size_t> transition_map; // transition of a -> transition of b
};

// Deterministic backtracking search with colour refinement.
[[nodiscard]] std::optional<net_iso> iso_check(const net& a, const net& b, iso_mode mode = iso_mode::exact);

[[nodiscard]] bool is_iso(const net& a, const net& b, const net_iso& f, iso_mode mode = iso_mode::exact);

// Reorders a into the index order of the iso target, keeping a's names.
[[nodiscard]] net apply_iso(const net& a, const net_iso& f);

} // namespace nwb
