#include "nwb/algebra.hpp"

#include <algorithm>
#include <map>

namespace nwb {

namespace {

void mi_rec(const net& n, std::size_t next, std::size_t bound, index_list& chosen, bitset& blocked,
            const std::function<void(const index_list&)>& fn)
{
    fn(chosen);
    if (chosen.size() == bound) return;
    for (std::size_t t = next; t < n.transitions.size(); ++t) {
        if (blocked[t]) continue;
        auto saved = blocked;
        blocked |= n.contention.row(t);
        chosen.push_back(t);
        mi_rec(n, t + 1, bound, chosen, blocked, fn);
        chosen.pop_back();
        blocked = std::move(saved);
    }
}

index_list union_of(const net& n, const index_list& ts, index_list transition::*field)
{
    index_list out;
    for (auto t : ts) {
        const auto& v = n.transitions[t].*field;
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class sync_search {
public:
    sync_search(const net& m, const net& n, std::size_t cap)
        : m_(m), n_(n), cap_(cap), by_target_(m.right), by_source_(n.left)
    {
        for (std::size_t u = 0; u < m.transitions.size(); ++u)
            for (auto j : m.transitions[u].target) by_target_[j].push_back(u);
        for (std::size_t v = 0; v < n.transitions.size(); ++v)
            for (auto j : n.transitions[v].source) by_source_[j].push_back(v);
    }

    sync_result run()
    {
        for (std::size_t u = 0; u < m_.transitions.size(); ++u)
            if (m_.transitions[u].target.empty()) result_.syncs.push_back({{u}, {}});
        for (std::size_t v = 0; v < n_.transitions.size(); ++v)
            if (n_.transitions[v].source.empty()) result_.syncs.push_back({{}, {v}});
        for (std::size_t u = 0; u < m_.transitions.size(); ++u) {
            if (m_.transitions[u].target.empty()) continue;
            seed_ = u;
            state s{{u}, {}, m_.contention.row(u), bitset(n_.transitions.size()), bitset(m_.right), bitset(m_.right)};
            for (auto j : m_.transitions[u].target) s.cover_u.set(j);
            grow(s);
        }
        for (auto& s : result_.syncs) {
            std::sort(s.left.begin(), s.left.end());
            std::sort(s.right.begin(), s.right.end());
        }
        std::sort(result_.syncs.begin(), result_.syncs.end());
        return std::move(result_);
    }

private:
    struct state {
        index_list u, v;
        bitset blocked_u, blocked_v;
        bitset cover_u, cover_v; // target(U), source(V) over the shared boundary
    };

    void grow(state& s)
    {
        if (s.u.size() + s.v.size() > cap_) {
            result_.cap_hit = true;
            return;
        }
        auto open = s.cover_u ^ s.cover_v;
        auto j = open.find_first();
        if (j == bitset::npos) {
            result_.syncs.push_back({s.u, s.v});
            return;
        }
        if (s.cover_u[j]) {
            for (auto v : by_source_[j]) {
                if (s.blocked_v[v]) continue;
                const auto& src = n_.transitions[v].source;
                if (std::any_of(src.begin(), src.end(), [&](auto i) { return s.cover_v[i]; })) continue;
                state next = s;
                next.v.push_back(v);
                next.blocked_v |= n_.contention.row(v);
                for (auto i : src) next.cover_v.set(i);
                grow(next);
            }
        } else {
            for (auto u : by_target_[j]) {
                if (u <= seed_ || s.blocked_u[u]) continue;
                const auto& tgt = m_.transitions[u].target;
                if (std::any_of(tgt.begin(), tgt.end(), [&](auto i) { return s.cover_u[i]; })) continue;
                state next = s;
                next.u.push_back(u);
                next.blocked_u |= m_.contention.row(u);
                for (auto i : tgt) next.cover_u.set(i);
                grow(next);
            }
        }
    }

    const net& m_;
    const net& n_;
    std::size_t cap_;
    std::size_t seed_ = 0;
    std::vector<index_list> by_target_, by_source_;
    sync_result result_;
};

std::string composite_name(const net& m, const net& n, const synchronisation& s)
{
    std::vector<std::string> parts;
    for (auto u : s.left) parts.push_back("L/" + m.transitions[u].name);
    for (auto v : s.right) parts.push_back("R/" + n.transitions[v].name);
    if (parts.size() == 1) return parts.front();
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out + ")";
}

bitset row_union(const net& n, const index_list& ts)
{
    bitset b(n.transitions.size());
    for (auto t : ts) b |= n.contention.row(t);
    return b;
}

} // namespace

void for_each_mi_set(const net& n, std::optional<std::size_t> bound, const std::function<void(const index_list&)>& fn)
{
    index_list chosen;
    bitset blocked(n.transitions.size());
    mi_rec(n, 0, bound.value_or(n.transitions.size()), chosen, blocked, fn);
}

std::vector<index_list> mi_sets(const net& n, std::optional<std::size_t> bound)
{
    std::vector<index_list> out;
    for_each_mi_set(n, bound, [&](const index_list& s) { out.push_back(s); });
    return out;
}

bool is_mutually_independent(const net& n, const index_list& set)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j)
            if (set[i] != set[j] && n.contention.contains(set[i], set[j])) return false;
    return true;
}

sync_result minimal_synchronisations(const net& m, const net& n, const sync_options& opts)
{
    if (m.right != n.left)
        throw boundary_mismatch("cannot compose " + std::to_string(m.left) + "->" + std::to_string(m.right) +
                                " with " + std::to_string(n.left) + "->" + std::to_string(n.right));
    auto cap = opts.size_cap ? opts.size_cap : m.transitions.size() + n.transitions.size();
    return sync_search(m, n, cap).run();
}

bool is_synchronisation(const net& m, const net& n, const synchronisation& s)
{
    return is_mutually_independent(m, s.left) && is_mutually_independent(n, s.right) &&
           union_of(m, s.left, &transition::target) == union_of(n, s.right, &transition::source);
}

bool is_minimal_synchronisation(const net& m, const net& n, const synchronisation& s)
{
    if (s.left.empty() && s.right.empty()) return false;
    if (!is_synchronisation(m, n, s)) return false;
    // Every nonempty proper sub-pair must fail to be a synchronisation.
    const auto a = s.left.size(), b = s.right.size();
    if (a + b > 24) throw invalid_argument("synchronisation too large for the minimality check");
    const std::size_t full = (std::size_t{1} << (a + b)) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        synchronisation sub;
        for (std::size_t i = 0; i < a; ++i)
            if (mask >> i & 1) sub.left.push_back(s.left[i]);
        for (std::size_t i = 0; i < b; ++i)
            if (mask >> (a + i) & 1) sub.right.push_back(s.right[i]);
        if (is_synchronisation(m, n, sub)) return false;
    }
    return true;
}

net seq_compose(const net& m, const net& n, const seq_options& opts, seq_report* report)
{
    auto found = minimal_synchronisations(m, n, {opts.size_cap});
    if (found.cap_hit) throw error("synchronisation size cap reached; the composite would be incomplete");

    net out;
    out.left = m.left;
    out.right = n.right;
    for (const auto& p : m.places) out.places.push_back("L/" + p);
    for (const auto& p : n.places) out.places.push_back("R/" + p);
    const auto shift = m.places.size();

    std::vector<bitset> rows_m, rows_n, bits_m, bits_n;
    for (const auto& s : found.syncs) {
        transition t;
        t.name = composite_name(m, n, s);
        t.pre = union_of(m, s.left, &transition::pre);
        t.post = union_of(m, s.left, &transition::post);
        for (auto p : union_of(n, s.right, &transition::pre)) t.pre.push_back(p + shift);
        for (auto p : union_of(n, s.right, &transition::post)) t.post.push_back(p + shift);
        t.source = union_of(m, s.left, &transition::source);
        t.target = union_of(n, s.right, &transition::target);
        normalize(t);
        out.transitions.push_back(std::move(t));
        rows_m.push_back(row_union(m, s.left));
        rows_n.push_back(row_union(n, s.right));
        bits_m.push_back(to_bitset(s.left, m.transitions.size()));
        bits_n.push_back(to_bitset(s.right, n.transitions.size()));
    }
    const auto count = out.transitions.size();
    out.contention = contention_relation(count);
    out.contention.make_reflexive();
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b)
            if (rows_m[a].intersects(bits_m[b]) || rows_n[a].intersects(bits_n[b])) out.contention.insert(a, b);

    std::size_t merged = 0;
    if (opts.merge_redundant_twins) {
        std::vector<bool> drop(count, false);
        std::map<std::tuple<index_list, index_list, index_list, index_list>, index_list> groups;
        for (std::size_t t = 0; t < count; ++t) {
            const auto& tr = out.transitions[t];
            if (tr.pre.empty() && tr.post.empty() && tr.source.empty() && tr.target.empty()) continue;
            groups[{tr.pre, tr.post, tr.source, tr.target}].push_back(t);
        }
        for (const auto& [key, members] : groups) {
            if (members.size() < 2) continue;
            for (auto t : members) {
                for (auto k : members) {
                    if (k == t || drop[k]) continue;
                    const auto& rk = out.contention.row(k);
                    const auto& rt = out.contention.row(t);
                    // keep the earlier of two transitions with equal rows
                    if (rk.is_subset_of(rt) && (rk != rt || k < t)) {
                        drop[t] = true;
                        break;
                    }
                }
            }
        }
        merged = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), true));
        if (merged) {
            index_list keep;
            for (std::size_t t = 0; t < count; ++t)
                if (!drop[t]) keep.push_back(t);
            net pruned;
            pruned.left = out.left;
            pruned.right = out.right;
            pruned.places = out.places;
            pruned.contention = contention_relation(keep.size());
            for (std::size_t a = 0; a < keep.size(); ++a) {
                pruned.transitions.push_back(out.transitions[keep[a]]);
                for (std::size_t b = 0; b < keep.size(); ++b)
                    if (out.contention.contains(keep[a], keep[b])) pruned.contention.insert(a, b);
            }
            out = std::move(pruned);
        }
    }
    if (report) *report = {found.cap_hit, merged};
    return out;
}

net tensor(const net& m, const net& n)
{
    net out;
    out.left = m.left + n.left;
    out.right = m.right + n.right;
    for (const auto& p : m.places) out.places.push_back("L/" + p);
    for (const auto& p : n.places) out.places.push_back("R/" + p);
    const auto shift = m.places.size();
    for (auto t : m.transitions) {
        t.name = "L/" + t.name;
        out.transitions.push_back(std::move(t));
    }
    for (auto t : n.transitions) {
        t.name = "R/" + t.name;
        for (auto& p : t.pre) p += shift;
        for (auto& p : t.post) p += shift;
        for (auto& i : t.source) i += m.left;
        for (auto& j : t.target) j += m.right;
        out.transitions.push_back(std::move(t));
    }
    const auto tm = m.transitions.size();
    out.contention = contention_relation(out.transitions.size());
    out.contention.make_reflexive();
    for (std::size_t a = 0; a < tm; ++a)
        for (std::size_t b = a + 1; b < tm; ++b)
            if (m.contention.contains(a, b)) out.contention.insert(a, b);
    for (std::size_t a = 0; a < n.transitions.size(); ++a)
        for (std::size_t b = a + 1; b < n.transitions.size(); ++b)
            if (n.contention.contains(a, b)) out.contention.insert(tm + a, tm + b);
    return out;
}

net power(const net& n, std::size_t k, const seq_options& opts)
{
    if (k == 0) throw invalid_argument("exponent must be at least 1");
    if (n.left != n.right)
        throw boundary_mismatch("power needs equal boundaries, got " + std::to_string(n.left) + "->" +
                                std::to_string(n.right));
    net out = n;
    for (std::size_t i = 1; i < k; ++i) out = seq_compose(out, n, opts);
    return out;
}

} // namespace nwb
