#pragma once

#include "nwb/automata.hpp"
#include "nwb/net.hpp"

#include <vector>

namespace nwb {

struct lts_edge {
    marking from;
    step_label label;
    marking to;
    index_list step; // the mutually independent set fired
};

// All steps enabled at x, the idle step first.
[[nodiscard]] std::vector<lts_edge> enabled_steps(const net& n, const marking& x);

struct explored_lts {
    std::vector<marking> states; // index = state id, 0 is the initial marking
    std::vector<std::vector<lts_edge>> edges;
};

[[nodiscard]] explored_lts explore(const net& n, const marking& initial);

// States are the markings reachable from initial; idle loops are left implicit.
[[nodiscard]] boundary_nfa build_nfa(const net& n, const marking& initial, const std::vector<marking>& finals);

// Breadth-first search on a closed net. Every step decomposes into single
// firings with the same overall effect, so only singleton steps are explored.
[[nodiscard]] bool reach_monolithic(const net& n, const marking& initial, const marking& final);

} // namespace nwb
