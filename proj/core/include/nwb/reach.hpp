#pragma once

#include "nwb/automata.hpp"
#include "nwb/wiring.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace nwb {

// Local markings are keyed by leaf path and list place names of the leaf net.
// Leaves without an entry start (or must end) empty.
using leaf_markings = std::map<std::string, std::vector<std::string>>;

struct reachability_problem {
    wiring_expr expr = wiring_expr::var("x");
    variable_assignment env;
    leaf_markings initial;
    leaf_markings final;
};

enum class minimize_mode {
    every_node,    // leaves and composites
    internal_only, // leaves keep their raw automaton
};

struct eval_options {
    bool memo = true;
    minimize_mode mode = minimize_mode::every_node;
};

struct eval_stats {
    std::size_t node_count = 0;
    std::size_t distinct_subterms = 0;
    std::size_t nfa_builds = 0;
    std::size_t cache_hits = 0;
    std::size_t max_intermediate_states = 0;
    std::size_t max_intermediate_boundary = 0;
};

struct nfa_result {
    boundary_nfa nfa;
    eval_stats stats;
};

[[nodiscard]] nfa_result eval_nfa(const reachability_problem& p, const eval_options& opts = {});

struct reach_result {
    bool reachable = false;
    eval_stats stats;
};

[[nodiscard]] reach_result check_reach(const reachability_problem& p, const eval_options& opts = {});

// Splits markings of the evaluated net (tree path prefixed names) per leaf.
[[nodiscard]] leaf_markings split_global_marking(const wiring_expr& e, const std::vector<std::string>& names);
// Inverse direction.
[[nodiscard]] std::vector<std::string> join_leaf_markings(const wiring_expr& e, const leaf_markings& m);

// The problem restricted to the subterm at path, markings re-rooted.
[[nodiscard]] reachability_problem subproblem(const reachability_problem& p, std::string_view path);

// Reassociates the expression and carries markings by leaf position.
[[nodiscard]] reachability_problem reassociate(const reachability_problem& p, assoc_policy policy);

// JSON problem files. Bindings are net file paths (relative to base_dir),
// "family:NAME(args)" strings or inline net objects. Markings are either an
// object keyed by leaf path or a list of global place names.
[[nodiscard]] reachability_problem problem_from_json(std::string_view text,
                                                     const std::filesystem::path& base_dir = {});
[[nodiscard]] reachability_problem load_problem(const std::filesystem::path& file);
[[nodiscard]] std::string to_json(const reachability_problem& p, const std::map<std::string, std::string>& binding_refs,
                                  int indent = 2);

[[nodiscard]] std::string to_json(const eval_stats& s);

} // namespace nwb
