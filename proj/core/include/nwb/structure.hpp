#pragma once

#include "nwb/iso.hpp"
#include "nwb/net.hpp"
#include "nwb/ports.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nwb {

struct oriented_partition {
    index_list left;  // place indices, sorted
    index_list right; // place indices, sorted
};

// Both sides nonempty, disjoint, covering all places. Throws invalid_argument.
void check_partition(const net& n, const oriented_partition& p);
[[nodiscard]] oriented_partition make_partition(const net& n, const std::vector<std::string>& left,
                                                const std::vector<std::string>& right);
// "0,1|2,3" or a JSON pair of name lists, e.g. [["0","1"],["2","3"]].
[[nodiscard]] oriented_partition parse_partition(const net& n, std::string_view text);

enum class side { left, right };

// left_to_right: for each extended port of the left places, its connection
// restricted to the extended ports of the right places.
enum class direction { left_to_right, right_to_left };

// Empty connections are not members of a network.
using network = std::set<connection>;
using basis_vector = std::vector<connection>;

[[nodiscard]] portset extended_ports(const net& n, const oriented_partition& p, side s);
[[nodiscard]] network network_of(const net& n, const oriented_partition& p, direction d);

[[nodiscard]] bool is_basis(const basis_vector& b, const network& nw);
// A smallest basis; its entries are intersections of members of nw.
[[nodiscard]] basis_vector minimal_basis(const network& nw);
[[nodiscard]] std::size_t dimension(const network& nw);

[[nodiscard]] bool is_pure(const net& nl, const net& nr);
// conn(right(j)) in nl, or conn(left(j)) in nr.
[[nodiscard]] connection boundary_connection(const net& nl, const net& nr, side s, std::size_t j);

struct proposition_report {
    bool left_basis = false;  // bconn of nl spans the right to left network
    bool right_basis = false; // bconn of nr spans the left to right network
    std::vector<std::string> violations;
    [[nodiscard]] bool passed() const { return left_basis && right_basis; }
};

// Composes nl ; nr, takes the partition given by the composite's tagged
// places, and checks both boundary connection vectors are bases.
[[nodiscard]] proposition_report check_proposition(const net& nl, const net& nr);

[[nodiscard]] std::size_t lower_bound(const net& n, const oriented_partition& p);

struct pure_split {
    std::size_t n = 0;
    net left;
    net right;
    net_iso iso; // from seq_compose(left, right) to the subject net, ignoring contention
};

// Exhaustive search over assignments of cross transitions to shared ports.
[[nodiscard]] std::optional<pure_split> min_pure_split(const net& n, const oriented_partition& p, std::size_t n_max);

[[nodiscard]] std::string to_string(const net& n, const network& nw);

} // namespace nwb
