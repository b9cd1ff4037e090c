#include "nwb/iso.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace nwb {

namespace {

enum edge_label : std::uint64_t { pre_edge = 1, post_edge, source_edge, target_edge, contention_edge };

// Vertex layout: places, then transitions, then left ports, then right ports.
struct labelled_graph {
    std::size_t places = 0;
    std::size_t transitions = 0;
    std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> adj;
    std::vector<std::size_t> initial_colour;
};

labelled_graph encode(const net& n, iso_mode mode)
{
    labelled_graph g;
    g.places = n.places.size();
    g.transitions = n.transitions.size();
    const auto t0 = g.places;
    const auto l0 = t0 + g.transitions;
    const auto r0 = l0 + n.left;
    g.adj.resize(r0 + n.right);
    g.initial_colour.resize(g.adj.size());
    for (std::size_t v = 0; v < g.adj.size(); ++v) {
        if (v < t0) g.initial_colour[v] = 0;
        else if (v < l0) g.initial_colour[v] = 1;
        else g.initial_colour[v] = 2 + (v - l0);
    }
    auto link = [&](std::size_t a, std::size_t b, std::uint64_t label) {
        g.adj[a].emplace_back(label, b);
        g.adj[b].emplace_back(label, a);
    };
    for (std::size_t t = 0; t < g.transitions; ++t) {
        const auto& tr = n.transitions[t];
        for (auto p : tr.pre) link(t0 + t, p, pre_edge);
        for (auto p : tr.post) link(t0 + t, p, post_edge);
        for (auto i : tr.source) link(t0 + t, l0 + i, source_edge);
        for (auto j : tr.target) link(t0 + t, r0 + j, target_edge);
        if (mode == iso_mode::exact)
            for (std::size_t u = t + 1; u < g.transitions; ++u)
                if (n.contention.contains(t, u)) link(t0 + t, t0 + u, contention_edge);
    }
    return g;
}

using colouring = std::vector<std::size_t>;

// Refines both colourings jointly until stable. Returns false if the colour
// histograms of the two graphs diverge.
bool refine(const labelled_graph& ga, const labelled_graph& gb, colouring& ca, colouring& cb)
{
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<std::uint64_t>, std::size_t> index;
        std::vector<std::vector<std::uint64_t>> sa(ga.adj.size()), sb(gb.adj.size());
        auto signature = [](const labelled_graph& g, const colouring& c, std::size_t v) {
            std::vector<std::uint64_t> s;
            s.reserve(g.adj[v].size() + 1);
            for (const auto& [label, w] : g.adj[v]) s.push_back((label << 40) | c[w]);
            std::sort(s.begin(), s.end());
            s.insert(s.begin(), c[v]);
            return s;
        };
        for (std::size_t v = 0; v < ga.adj.size(); ++v) index.emplace(sa[v] = signature(ga, ca, v), 0);
        for (std::size_t v = 0; v < gb.adj.size(); ++v) index.emplace(sb[v] = signature(gb, cb, v), 0);
        std::size_t next = 0;
        for (auto& [sig, id] : index) id = next++;
        std::vector<long> balance(next, 0);
        for (std::size_t v = 0; v < ga.adj.size(); ++v) ++balance[ca[v] = index[sa[v]]];
        for (std::size_t v = 0; v < gb.adj.size(); ++v) --balance[cb[v] = index[sb[v]]];
        if (std::any_of(balance.begin(), balance.end(), [](long x) { return x != 0; })) return false;
        if (next == classes) return true;
        classes = next;
    }
}

std::optional<net_iso> search(const net& a, const net& b, iso_mode mode, const labelled_graph& ga,
                              const labelled_graph& gb, colouring ca, colouring cb)
{
    if (!refine(ga, gb, ca, cb)) return std::nullopt;

    std::map<std::size_t, std::size_t> count;
    for (auto c : ca) ++count[c];
    std::size_t best = 0, best_count = 0;
    for (auto [c, k] : count)
        if (k > 1 && (best_count == 0 || k < best_count)) {
            best = c;
            best_count = k;
        }

    if (best_count == 0) {
        std::vector<std::size_t> where(ca.size());
        for (std::size_t v = 0; v < cb.size(); ++v) where[cb[v]] = v;
        net_iso f;
        for (std::size_t p = 0; p < ga.places; ++p) f.place_map.push_back(where[ca[p]]);
        for (std::size_t t = 0; t < ga.transitions; ++t) f.transition_map.push_back(where[ca[ga.places + t]] - gb.places);
        if (is_iso(a, b, f, mode)) return f;
        return std::nullopt;
    }

    std::size_t v = std::find(ca.begin(), ca.end(), best) - ca.begin();
    const std::size_t fresh = *std::max_element(ca.begin(), ca.end()) + 1;
    for (std::size_t w = 0; w < cb.size(); ++w) {
        if (cb[w] != best) continue;
        auto na = ca;
        auto nb = cb;
        na[v] = fresh;
        nb[w] = fresh;
        if (auto f = search(a, b, mode, ga, gb, std::move(na), std::move(nb))) return f;
    }
    return std::nullopt;
}

} // namespace

bool is_iso(const net& a, const net& b, const net_iso& f, iso_mode mode)
{
    if (a.left != b.left || a.right != b.right) return false;
    if (a.places.size() != b.places.size() || a.transitions.size() != b.transitions.size()) return false;
    if (f.place_map.size() != a.places.size() || f.transition_map.size() != a.transitions.size()) return false;
    std::vector<bool> hit_p(b.places.size()), hit_t(b.transitions.size());
    for (auto p : f.place_map) {
        if (p >= hit_p.size() || hit_p[p]) return false;
        hit_p[p] = true;
    }
    for (auto t : f.transition_map) {
        if (t >= hit_t.size() || hit_t[t]) return false;
        hit_t[t] = true;
    }
    auto mapped = [&](const index_list& v) {
        index_list out;
        for (auto p : v) out.push_back(f.place_map[p]);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        const auto& x = a.transitions[t];
        const auto& y = b.transitions[f.transition_map[t]];
        if (mapped(x.pre) != y.pre || mapped(x.post) != y.post) return false;
        if (x.source != y.source || x.target != y.target) return false;
    }
    if (mode == iso_mode::exact) {
        if (a.contention.size() != a.transitions.size() || b.contention.size() != b.transitions.size()) return false;
        for (std::size_t t = 0; t < a.transitions.size(); ++t)
            for (std::size_t u = 0; u < a.transitions.size(); ++u)
                if (a.contention.contains(t, u) != b.contention.contains(f.transition_map[t], f.transition_map[u]))
                    return false;
    }
    return true;
}

std::optional<net_iso> iso_check(const net& a, const net& b, iso_mode mode)
{
    if (a.left != b.left || a.right != b.right) return std::nullopt;
    if (a.places.size() != b.places.size() || a.transitions.size() != b.transitions.size()) return std::nullopt;
    auto ga = encode(a, mode);
    auto gb = encode(b, mode);
    return search(a, b, mode, ga, gb, ga.initial_colour, gb.initial_colour);
}

net apply_iso(const net& a, const net_iso& f)
{
    net out;
    out.left = a.left;
    out.right = a.right;
    out.places.resize(a.places.size());
    for (std::size_t p = 0; p < a.places.size(); ++p) out.places[f.place_map[p]] = a.places[p];
    out.transitions.resize(a.transitions.size());
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        auto tr = a.transitions[t];
        for (auto* v : {&tr.pre, &tr.post})
            for (auto& p : *v) p = f.place_map[p];
        normalize(tr);
        out.transitions[f.transition_map[t]] = std::move(tr);
    }
    out.contention = contention_relation(a.transitions.size());
    for (std::size_t t = 0; t < a.transitions.size(); ++t)
        for (std::size_t u = 0; u < a.transitions.size(); ++u)
            if (a.contention.contains(t, u)) out.contention.insert(f.transition_map[t], f.transition_map[u]);
    return out;
}

} // namespace nwb
