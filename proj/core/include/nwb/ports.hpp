#pragma once

#include "nwb/net.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>

namespace nwb {

enum class port_kind : std::uint8_t { left, place_in, place_out, right };

// place_out(p) is where tokens leave p (p in pre t); place_in(p) is where they arrive.
struct port {
    port_kind kind = port_kind::left;
    std::size_t index = 0;

    static port left_boundary(std::size_t i) { return {port_kind::left, i}; }
    static port right_boundary(std::size_t j) { return {port_kind::right, j}; }
    static port in(std::size_t place) { return {port_kind::place_in, place}; }
    static port out(std::size_t place) { return {port_kind::place_out, place}; }

    [[nodiscard]] bool is_place() const { return kind == port_kind::place_in || kind == port_kind::place_out; }

    // Left ports first, then place ports by place (in before out), then right ports.
    std::strong_ordering operator<=>(const port& o) const
    {
        auto group = [](port_kind k) { return k == port_kind::left ? 0 : k == port_kind::right ? 2 : 1; };
        if (auto c = group(kind) <=> group(o.kind); c != 0) return c;
        if (auto c = index <=> o.index; c != 0) return c;
        return static_cast<int>(kind) <=> static_cast<int>(o.kind);
    }
    bool operator==(const port&) const = default;
};

using portset = std::set<port>;
using connection = std::set<portset>;

[[nodiscard]] bool is_port_of(const net& n, const port& p);

[[nodiscard]] portset ports_of_transition(const net& n, std::size_t t);
[[nodiscard]] portset ports_of_transition(const net& n, std::string_view name);
[[nodiscard]] portset ports_of_net(const net& n);
[[nodiscard]] portset place_ports(const index_list& places);

// { ports(t) \ {p} | {p} strictly contained in ports(t) }
[[nodiscard]] connection conn(const net& n, const port& p);
// { K ∩ r | K in conn(p), K ∩ r nonempty }
[[nodiscard]] connection conn_restricted(const net& n, const port& p, const portset& r);

[[nodiscard]] std::string to_string(const net& n, const port& p);
[[nodiscard]] std::string to_string(const net& n, const portset& s);
[[nodiscard]] std::string to_string(const net& n, const connection& c);

} // namespace nwb
