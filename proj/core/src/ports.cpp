#include "nwb/ports.hpp"

#include <algorithm>
#include <iterator>

namespace nwb {

bool is_port_of(const net& n, const port& p)
{
    switch (p.kind) {
    case port_kind::left: return p.index < n.left;
    case port_kind::right: return p.index < n.right;
    default: return p.index < n.places.size();
    }
}

portset ports_of_transition(const net& n, std::size_t t)
{
    if (t >= n.transitions.size()) throw unknown_name("unknown transition index " + std::to_string(t));
    const auto& tr = n.transitions[t];
    portset s;
    for (auto p : tr.pre) s.insert(port::out(p));
    for (auto p : tr.post) s.insert(port::in(p));
    for (auto i : tr.source) s.insert(port::left_boundary(i));
    for (auto j : tr.target) s.insert(port::right_boundary(j));
    return s;
}

portset ports_of_transition(const net& n, std::string_view name)
{
    return ports_of_transition(n, n.transition_index(name));
}

portset place_ports(const index_list& places)
{
    portset s;
    for (auto p : places) {
        s.insert(port::in(p));
        s.insert(port::out(p));
    }
    return s;
}

portset ports_of_net(const net& n)
{
    portset s;
    for (std::size_t i = 0; i < n.left; ++i) s.insert(port::left_boundary(i));
    for (std::size_t p = 0; p < n.places.size(); ++p) {
        s.insert(port::in(p));
        s.insert(port::out(p));
    }
    for (std::size_t j = 0; j < n.right; ++j) s.insert(port::right_boundary(j));
    return s;
}

connection conn(const net& n, const port& p)
{
    if (!is_port_of(n, p)) throw unknown_name("unknown port " + std::to_string(p.index));
    connection c;
    for (std::size_t t = 0; t < n.transitions.size(); ++t) {
        auto s = ports_of_transition(n, t);
        if (s.erase(p) && !s.empty()) c.insert(std::move(s));
    }
    return c;
}

connection conn_restricted(const net& n, const port& p, const portset& r)
{
    connection c;
    for (const auto& k : conn(n, p)) {
        portset cut;
        std::set_intersection(k.begin(), k.end(), r.begin(), r.end(), std::inserter(cut, cut.end()));
        if (!cut.empty()) c.insert(std::move(cut));
    }
    return c;
}

std::string to_string(const net& n, const port& p)
{
    switch (p.kind) {
    case port_kind::left: return "left(" + std::to_string(p.index) + ")";
    case port_kind::right: return "right(" + std::to_string(p.index) + ")";
    case port_kind::place_in: return n.places.at(p.index) + "-in";
    case port_kind::place_out: return n.places.at(p.index) + "-out";
    }
    return {};
}

std::string to_string(const net& n, const portset& s)
{
    std::string out = "<";
    bool first = true;
    for (const auto& p : s) {
        if (!first) out += ",";
        first = false;
        out += to_string(n, p);
    }
    return out + ">";
}

std::string to_string(const net& n, const connection& c)
{
    std::string out = "[";
    bool first = true;
    for (const auto& s : c) {
        if (!first) out += ", ";
        first = false;
        out += to_string(n, s);
    }
    return out + "]";
}

} // namespace nwb
