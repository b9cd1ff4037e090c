#pragma once

#include "nwb/net.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nwb {

// Transitions of M (left) and N (right), each sorted by index.
struct synchronisation {
    index_list left;
    index_list right;

    auto operator<=>(const synchronisation&) const = default;
};

// Calls fn on every mutually independent set (including the empty set) of at
// most `bound` elements, in lexicographic depth-first order.
void for_each_mi_set(const net& n, std::optional<std::size_t> bound,
                     const std::function<void(const index_list&)>& fn);
[[nodiscard]] std::vector<index_list> mi_sets(const net& n, std::optional<std::size_t> bound = std::nullopt);

[[nodiscard]] bool is_mutually_independent(const net& n, const index_list& set);

struct sync_options {
    // Maximum |U|+|V|; 0 means |T_M|+|T_N|, which can never be reached.
    std::size_t size_cap = 0;
};

struct sync_result {
    std::vector<synchronisation> syncs; // sorted
    bool cap_hit = false;
};

[[nodiscard]] sync_result minimal_synchronisations(const net& m, const net& n, const sync_options& opts = {});

// Direct check of the definition (used by property tests).
[[nodiscard]] bool is_synchronisation(const net& m, const net& n, const synchronisation& s);
[[nodiscard]] bool is_minimal_synchronisation(const net& m, const net& n, const synchronisation& s);

struct seq_options {
    std::size_t size_cap = 0;
    // Drops a composite transition when another one with the same pre, post,
    // source and target is in contention with no more transitions. Such a
    // transition never adds a step, so the labelled transition system of the
    // composite is unchanged.
    bool merge_redundant_twins = true;
};

struct seq_report {
    bool cap_hit = false;
    std::size_t merged_twins = 0;
};

// Throws boundary_mismatch, or error if the size cap was hit.
[[nodiscard]] net seq_compose(const net& m, const net& n, const seq_options& opts = {}, seq_report* report = nullptr);
[[nodiscard]] net tensor(const net& m, const net& n);
// Left associated k-fold sequential composition.
[[nodiscard]] net power(const net& n, std::size_t k, const seq_options& opts = {});

} // namespace nwb
