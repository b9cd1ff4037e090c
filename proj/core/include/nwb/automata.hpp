#pragma once

#include "nwb/label.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nwb {

// NFA over step labels. The all-zero label is epsilon, and every state has an
// implicit epsilon self-loop (the idle step). If sink() is set, every label
// that has no explicit edge leads to the sink, which is rejecting and absorbing.
class boundary_nfa {
public:
    using state_id = std::uint32_t;

    struct edge {
        step_label label;
        state_id to = 0;
        auto operator<=>(const edge&) const = default;
    };

    boundary_nfa() = default;
    boundary_nfa(std::size_t left_width, std::size_t right_width);

    [[nodiscard]] std::size_t left_width() const { return left_; }
    [[nodiscard]] std::size_t right_width() const { return right_; }
    [[nodiscard]] std::size_t num_states() const { return out_.size(); }
    [[nodiscard]] std::size_t num_edges() const;

    state_id add_state(bool accepting = false);
    void add_edge(state_id from, step_label label, state_id to);
    [[nodiscard]] const std::vector<edge>& edges(state_id s) const { return out_.at(s); }

    void set_initial(state_id s);
    [[nodiscard]] state_id initial() const { return initial_; }
    void set_accepting(state_id s, bool accepting);
    [[nodiscard]] bool is_accepting(state_id s) const { return accepting_.at(s); }
    void set_sink(std::optional<state_id> s);
    [[nodiscard]] std::optional<state_id> sink() const { return sink_; }

    // Sorts and deduplicates every edge list.
    void canonicalize();

    bool operator==(const boundary_nfa&) const = default;

private:
    std::size_t left_ = 0;
    std::size_t right_ = 0;
    std::vector<std::vector<edge>> out_;
    std::vector<bool> accepting_;
    state_id initial_ = 0;
    std::optional<state_id> sink_;
};

using word = std::vector<step_label>;

// a: k->m, b: m->n. Steps synchronise on the middle label; either side may idle.
[[nodiscard]] boundary_nfa seq_product(const boundary_nfa& a, const boundary_nfa& b);
[[nodiscard]] boundary_nfa tensor_product(const boundary_nfa& a, const boundary_nfa& b);
[[nodiscard]] boundary_nfa epsilon_close(const boundary_nfa& a);
[[nodiscard]] boundary_nfa determinize(const boundary_nfa& a);
// Minimal DFA numbered in breadth-first order over sorted labels, dead state
// last. Accepts partial deterministic input; throws on nondeterminism.
[[nodiscard]] boundary_nfa minimize(const boundary_nfa& d);
// minimize(determinize(epsilon_close(a)))
[[nodiscard]] boundary_nfa minimal_dfa(const boundary_nfa& a);

[[nodiscard]] bool is_deterministic(const boundary_nfa& a);
[[nodiscard]] bool has_epsilon_edges(const boundary_nfa& a);

// Membership of a word in the epsilon-quotiented language.
[[nodiscard]] bool accepts(const boundary_nfa& a, std::span<const step_label> w);

[[nodiscard]] bool is_trivially_accepting(const boundary_nfa& a);
[[nodiscard]] bool is_trivially_rejecting(const boundary_nfa& a);

// Dead state omitted; parallel edges merged into '*' patterns when compress is set.
[[nodiscard]] std::string to_dot(const boundary_nfa& a, bool compress = true);

} // namespace nwb
