#pragma once

#include "nwb/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nwb {

using index_list = std::vector<std::size_t>;
using bitset = boost::dynamic_bitset<>;

// A marking of a 1-bounded net: bit i is set iff place i holds a token.
using marking = bitset;

struct transition {
    std::string name;
    index_list pre;    // places consumed
    index_list post;   // places produced
    index_list source; // left boundary ports
    index_list target; // right boundary ports

    bool operator==(const transition&) const = default;
};

// Symmetric relation on transition indices, stored as adjacency rows.
class contention_relation {
public:
    contention_relation() = default;
    explicit contention_relation(std::size_t n) : rows_(n, bitset(n)) {}

    [[nodiscard]] std::size_t size() const { return rows_.size(); }
    [[nodiscard]] bool contains(std::size_t a, std::size_t b) const { return rows_[a][b]; }
    [[nodiscard]] const bitset& row(std::size_t a) const { return rows_[a]; }

    void insert(std::size_t a, std::size_t b)
    {
        rows_[a].set(b);
        rows_[b].set(a);
    }
    void make_reflexive()
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].set(i);
    }

    bool operator==(const contention_relation&) const = default;

private:
    std::vector<bitset> rows_;
};

struct net {
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::string> places;
    std::vector<transition> transitions;
    contention_relation contention;

    [[nodiscard]] std::optional<std::size_t> find_place(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_transition(std::string_view name) const;
    // Throwing variants.
    [[nodiscard]] std::size_t place_index(std::string_view name) const;
    [[nodiscard]] std::size_t transition_index(std::string_view name) const;

    bool operator==(const net&) const = default;
};

// Convenience description used by generators and tests: places by name.
struct transition_spec {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> post;
    index_list source;
    index_list target;
};

// Builds a net with minimal contention. Throws on unknown place names.
net make_net(std::size_t left, std::size_t right, std::vector<std::string> places,
             const std::vector<transition_spec>& transitions);

enum class violation_kind {
    empty_place_name,
    duplicate_place,
    duplicate_transition,
    place_out_of_range,
    boundary_out_of_range,
    unsorted_indices,
    empty_transition,
    contention_size,
    contention_not_reflexive,
    contention_not_symmetric,
    contention_missing_pair,
};

struct violation {
    violation_kind kind;
    std::string message;
};

[[nodiscard]] std::vector<violation> validate(const net& n);

// Warnings that do not make a net invalid, e.g. transitions that can never fire.
[[nodiscard]] std::vector<std::string> lint(const net& n);

// Least reflexive symmetric relation forced by shared pre places, post places,
// source ports or target ports. The existing contention of n is ignored.
[[nodiscard]] contention_relation minimal_contention(const net& n);

// Sorts and deduplicates the index lists of every transition.
void normalize(transition& t);

[[nodiscard]] marking make_marking(const net& n, const std::vector<std::string>& names);
[[nodiscard]] std::vector<std::string> marking_names(const net& n, const marking& m);

[[nodiscard]] bitset to_bitset(const index_list& indices, std::size_t size);

} // namespace nwb
