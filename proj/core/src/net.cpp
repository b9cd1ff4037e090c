#include "nwb/net.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nwb {

namespace {

std::string list(const index_list& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

bool intersects(const index_list& a, const index_list& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

// Which of conditions (i)-(iv) force t and u into contention, or 0.
int forcing_condition(const transition& t, const transition& u)
{
    if (intersects(t.pre, u.pre)) return 1;
    if (intersects(t.post, u.post)) return 2;
    if (intersects(t.source, u.source)) return 3;
    if (intersects(t.target, u.target)) return 4;
    return 0;
}

const char* roman(int c)
{
    static const char* names[] = {"", "(i) shared pre place", "(ii) shared post place", "(iii) shared source port",
                                  "(iv) shared target port"};
    return names[c];
}

} // namespace

std::optional<std::size_t> net::find_place(std::string_view name) const
{
    for (std::size_t i = 0; i < places.size(); ++i)
        if (places[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> net::find_transition(std::string_view name) const
{
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].name == name) return i;
    return std::nullopt;
}

std::size_t net::place_index(std::string_view name) const
{
    if (auto i = find_place(name)) return *i;
    throw unknown_name("unknown place '" + std::string(name) + "'");
}

std::size_t net::transition_index(std::string_view name) const
{
    if (auto i = find_transition(name)) return *i;
    throw unknown_name("unknown transition '" + std::string(name) + "'");
}

void normalize(transition& t)
{
    for (auto* v : {&t.pre, &t.post, &t.source, &t.target}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
}

contention_relation minimal_contention(const net& n)
{
    const auto count = n.transitions.size();
    contention_relation c(count);
    c.make_reflexive();
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b)
            if (forcing_condition(n.transitions[a], n.transitions[b])) c.insert(a, b);
    return c;
}

net make_net(std::size_t left, std::size_t right, std::vector<std::string> places,
             const std::vector<transition_spec>& transitions)
{
    net n;
    n.left = left;
    n.right = right;
    n.places = std::move(places);
    for (const auto& spec : transitions) {
        transition t;
        t.name = spec.name;
        for (const auto& p : spec.pre) t.pre.push_back(n.place_index(p));
        for (const auto& p : spec.post) t.post.push_back(n.place_index(p));
        t.source = spec.source;
        t.target = spec.target;
        normalize(t);
        n.transitions.push_back(std::move(t));
    }
    n.contention = minimal_contention(n);
    return n;
}

std::vector<violation> validate(const net& n)
{
    std::vector<violation> out;
    auto add = [&](violation_kind k, std::string msg) { out.push_back({k, std::move(msg)}); };

    std::set<std::string> seen;
    for (const auto& p : n.places) {
        if (p.empty()) add(violation_kind::empty_place_name, "place with empty name");
        else if (!seen.insert(p).second) add(violation_kind::duplicate_place, "duplicate place '" + p + "'");
    }
    seen.clear();
    for (const auto& t : n.transitions)
        if (!seen.insert(t.name).second)
            add(violation_kind::duplicate_transition, "duplicate transition '" + t.name + "'");

    for (const auto& t : n.transitions) {
        for (const auto* v : {&t.pre, &t.post})
            for (auto p : *v)
                if (p >= n.places.size())
                    add(violation_kind::place_out_of_range,
                        "transition '" + t.name + "' refers to place index " + std::to_string(p));
        for (auto i : t.source)
            if (i >= n.left)
                add(violation_kind::boundary_out_of_range, "transition '" + t.name + "' has source " +
                                                               std::to_string(i) + " but left width is " +
                                                               std::to_string(n.left));
        for (auto j : t.target)
            if (j >= n.right)
                add(violation_kind::boundary_out_of_range, "transition '" + t.name + "' has target " +
                                                               std::to_string(j) + " but right width is " +
                                                               std::to_string(n.right));
        for (const auto* v : {&t.pre, &t.post, &t.source, &t.target})
            if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end())
                add(violation_kind::unsorted_indices, "transition '" + t.name + "' has unsorted index list " + list(*v));
        if (t.pre.empty() && t.post.empty() && t.source.empty() && t.target.empty())
            add(violation_kind::empty_transition, "transition '" + t.name + "' touches nothing");
    }

    const auto count = n.transitions.size();
    if (n.contention.size() != count) {
        add(violation_kind::contention_size, "contention covers " + std::to_string(n.contention.size()) +
                                                 " transitions, net has " + std::to_string(count));
        return out;
    }
    for (std::size_t a = 0; a < count; ++a) {
        if (n.contention.row(a).size() != count) {
            add(violation_kind::contention_size, "contention row of wrong size");
            return out;
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        const auto& ta = n.transitions[a];
        if (!n.contention.contains(a, a))
            add(violation_kind::contention_not_reflexive, "contention misses ('" + ta.name + "','" + ta.name + "')");
        for (std::size_t b = a + 1; b < count; ++b) {
            const auto& tb = n.transitions[b];
            bool ab = n.contention.contains(a, b);
            if (ab != n.contention.contains(b, a))
                add(violation_kind::contention_not_symmetric,
                    "contention not symmetric on '" + ta.name + "','" + tb.name + "'");
            if (!ab)
                if (int c = forcing_condition(ta, tb))
                    add(violation_kind::contention_missing_pair, "'" + ta.name + "' and '" + tb.name +
                                                                     "' must be in contention by condition " +
                                                                     roman(c));
        }
    }
    return out;
}

std::vector<std::string> lint(const net& n)
{
    std::vector<std::string> out;
    for (const auto& t : n.transitions)
        if (intersects(t.pre, t.post))
            out.push_back("transition '" + t.name + "' has a place in both pre and post and can never fire");
    return out;
}

bitset to_bitset(const index_list& indices, std::size_t size)
{
    bitset b(size);
    for (auto i : indices) b.set(i);
    return b;
}

marking make_marking(const net& n, const std::vector<std::string>& names)
{
    marking m(n.places.size());
    for (const auto& name : names) m.set(n.place_index(name));
    return m;
}

std::vector<std::string> marking_names(const net& n, const marking& m)
{
    std::vector<std::string> out;
    for (auto i = m.find_first(); i != marking::npos; i = m.find_next(i)) out.push_back(n.places[i]);
    return out;
}

} // namespace nwb
