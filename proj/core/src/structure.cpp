#include "nwb/structure.hpp"

#include "nwb/algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>

namespace nwb {

namespace {

connection unite(const connection& a, const connection& b)
{
    connection out = a;
    out.insert(b.begin(), b.end());
    return out;
}

connection meet(const connection& a, const connection& b)
{
    connection out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

bool representable(const connection& c, const basis_vector& b)
{
    connection u;
    for (const auto& e : b)
        if (std::includes(c.begin(), c.end(), e.begin(), e.end())) u = unite(u, e);
    return u == c;
}

std::vector<std::string> split_names(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        auto j = s.find(',', i);
        if (j == std::string_view::npos) j = s.size();
        auto part = s.substr(i, j - i);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        if (!part.empty()) out.emplace_back(part);
        i = j + 1;
    }
    return out;
}

connection translate(const connection& c, std::size_t place_shift)
{
    connection out;
    for (const auto& s : c) {
        portset t;
        for (auto p : s) {
            if (p.is_place()) p.index += place_shift;
            t.insert(p);
        }
        out.insert(std::move(t));
    }
    return out;
}

} // namespace

void check_partition(const net& n, const oriented_partition& p)
{
    if (p.left.empty() || p.right.empty()) throw invalid_argument("both sides of a partition must be nonempty");
    std::vector<int> seen(n.places.size(), 0);
    for (const auto* side : {&p.left, &p.right})
        for (auto i : *side) {
            if (i >= n.places.size()) throw invalid_argument("partition refers to an unknown place");
            if (seen[i]++) throw invalid_argument("place '" + n.places[i] + "' is on both sides or listed twice");
        }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw invalid_argument("place '" + n.places[i] + "' is missing from the partition");
}

oriented_partition make_partition(const net& n, const std::vector<std::string>& left,
                                  const std::vector<std::string>& right)
{
    oriented_partition p;
    for (const auto& s : left) p.left.push_back(n.place_index(s));
    for (const auto& s : right) p.right.push_back(n.place_index(s));
    std::sort(p.left.begin(), p.left.end());
    std::sort(p.right.begin(), p.right.end());
    check_partition(n, p);
    return p;
}

oriented_partition parse_partition(const net& n, std::string_view text)
{
    auto first = text.find_first_not_of(" \t\n");
    if (first != std::string_view::npos && text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw parse_error(e.byte, e.what());
        }
        if (!j.is_array() || j.size() != 2) throw invalid_argument("partition must be a pair of name lists");
        try {
            return make_partition(n, j[0].get<std::vector<std::string>>(), j[1].get<std::vector<std::string>>());
        } catch (const nlohmann::json::exception& e) {
            throw invalid_argument(std::string("malformed partition: ") + e.what());
        }
    }
    auto bar = text.find('|');
    if (bar == std::string_view::npos) throw parse_error(text.size(), "partition needs a '|' between the sides");
    return make_partition(n, split_names(text.substr(0, bar)), split_names(text.substr(bar + 1)));
}

portset extended_ports(const net& n, const oriented_partition& p, side s)
{
    check_partition(n, p);
    auto out = place_ports(s == side::left ? p.left : p.right);
    if (s == side::left)
        for (std::size_t i = 0; i < n.left; ++i) out.insert(port::left_boundary(i));
    else
        for (std::size_t j = 0; j < n.right; ++j) out.insert(port::right_boundary(j));
    return out;
}

network network_of(const net& n, const oriented_partition& p, direction d)
{
    auto from = extended_ports(n, p, d == direction::left_to_right ? side::left : side::right);
    auto to = extended_ports(n, p, d == direction::left_to_right ? side::right : side::left);
    network out;
    for (const auto& q : from) {
        auto c = conn_restricted(n, q, to);
        if (!c.empty()) out.insert(std::move(c));
    }
    return out;
}

bool is_basis(const basis_vector& b, const network& nw)
{
    return std::all_of(nw.begin(), nw.end(), [&](const connection& c) { return representable(c, b); });
}

basis_vector minimal_basis(const network& nw)
{
    // closure of the members under intersection, without the empty connection
    std::set<connection> cand_set(nw.begin(), nw.end());
    cand_set.erase(connection{});
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<connection> cur(cand_set.begin(), cand_set.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                auto m = meet(cur[i], cur[j]);
                if (!m.empty() && cand_set.insert(std::move(m)).second) grew = true;
            }
    }
    std::vector<connection> cands(cand_set.begin(), cand_set.end());
    std::vector<connection> targets;
    for (const auto& c : nw)
        if (!c.empty()) targets.push_back(c);

    basis_vector chosen;
    std::function<bool(std::size_t)> search = [&](std::size_t budget) -> bool {
        for (const auto& c : targets) {
            connection u;
            for (const auto& e : chosen)
                if (std::includes(c.begin(), c.end(), e.begin(), e.end())) u = unite(u, e);
            if (u == c) continue;
            if (budget == 0) return false;
            portset missing;
            for (const auto& s : c)
                if (!u.count(s)) {
                    missing = s;
                    break;
                }
            for (const auto& e : cands) {
                if (!e.count(missing) || !std::includes(c.begin(), c.end(), e.begin(), e.end())) continue;
                if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) continue;
                chosen.push_back(e);
                if (search(budget - 1)) return true;
                chosen.pop_back();
            }
            return false;
        }
        return true;
    };
    for (std::size_t k = 0;; ++k)
        if (search(k)) return chosen;
}

std::size_t dimension(const network& nw)
{
    return minimal_basis(nw).size();
}

bool is_pure(const net& nl, const net& nr)
{
    if (nl.right != nr.left) throw boundary_mismatch("split does not share a boundary");
    auto ok = [](const net& n, bool right) {
        return std::all_of(n.transitions.begin(), n.transitions.end(),
                           [&](const transition& t) { return (right ? t.target : t.source).size() <= 1; });
    };
    return ok(nl, true) && ok(nr, false);
}

connection boundary_connection(const net& nl, const net& nr, side s, std::size_t j)
{
    if (nl.right != nr.left) throw boundary_mismatch("split does not share a boundary");
    if (j >= nl.right) throw invalid_argument("shared port " + std::to_string(j) + " out of range");
    return s == side::left ? conn(nl, port::right_boundary(j)) : conn(nr, port::left_boundary(j));
}

proposition_report check_proposition(const net& nl, const net& nr)
{
    if (!is_pure(nl, nr)) throw invalid_argument("check_proposition needs a pure split");
    auto whole = seq_compose(nl, nr, {0, false});
    oriented_partition p;
    for (std::size_t i = 0; i < nl.places.size(); ++i) p.left.push_back(i);
    for (std::size_t i = 0; i < nr.places.size(); ++i) p.right.push_back(nl.places.size() + i);

    proposition_report r;
    basis_vector bl, br;
    for (std::size_t j = 0; j < nl.right; ++j) {
        bl.push_back(boundary_connection(nl, nr, side::left, j));
        br.push_back(translate(boundary_connection(nl, nr, side::right, j), nl.places.size()));
    }
    if (p.left.empty() || p.right.empty()) {
        // one side has no places: both networks are empty
        r.left_basis = r.right_basis = true;
        return r;
    }
    auto l2r = network_of(whole, p, direction::left_to_right);
    auto r2l = network_of(whole, p, direction::right_to_left);
    r.right_basis = is_basis(br, l2r);
    r.left_basis = is_basis(bl, r2l);
    if (!r.right_basis)
        r.violations.push_back("boundary connections of the right net do not span " + to_string(whole, l2r));
    if (!r.left_basis)
        r.violations.push_back("boundary connections of the left net do not span " + to_string(whole, r2l));
    return r;
}

std::size_t lower_bound(const net& n, const oriented_partition& p)
{
    return std::max(dimension(network_of(n, p, direction::left_to_right)),
                    dimension(network_of(n, p, direction::right_to_left)));
}

std::optional<pure_split> min_pure_split(const net& n, const oriented_partition& p, std::size_t n_max)
{
    if (n.left != 0 || n.right != 0) throw invalid_argument("min_pure_split needs a closed net (0->0)");
    check_partition(n, p);
    std::vector<long> local(n.places.size(), -1);
    std::vector<bool> on_left(n.places.size(), false);
    for (std::size_t i = 0; i < p.left.size(); ++i) {
        local[p.left[i]] = static_cast<long>(i);
        on_left[p.left[i]] = true;
    }
    for (std::size_t i = 0; i < p.right.size(); ++i) local[p.right[i]] = static_cast<long>(i);

    // footprint of a transition restricted to one side, in local indices
    using half = std::pair<index_list, index_list>;
    auto part = [&](const transition& t, bool left) {
        half h;
        for (auto q : t.pre)
            if (on_left[q] == left) h.first.push_back(static_cast<std::size_t>(local[q]));
        for (auto q : t.post)
            if (on_left[q] == left) h.second.push_back(static_cast<std::size_t>(local[q]));
        return h;
    };
    std::vector<transition> inner_left, inner_right;
    std::vector<std::pair<half, half>> cross;
    for (const auto& t : n.transitions) {
        auto l = part(t, true);
        auto r = part(t, false);
        bool touches_l = !l.first.empty() || !l.second.empty();
        bool touches_r = !r.first.empty() || !r.second.empty();
        if (touches_l && touches_r) {
            cross.emplace_back(std::move(l), std::move(r));
        } else {
            transition u = t;
            u.pre = (touches_l ? l : r).first;
            u.post = (touches_l ? l : r).second;
            (touches_l ? inner_left : inner_right).push_back(std::move(u));
        }
    }

    std::vector<std::string> left_names, right_names;
    for (auto i : p.left) left_names.push_back(n.places[i]);
    for (auto i : p.right) right_names.push_back(n.places[i]);

    auto build = [&](const std::vector<std::size_t>& block, std::size_t ports) -> std::optional<pure_split> {
        net nl, nr;
        nl.right = nr.left = ports;
        nl.places = left_names;
        nr.places = right_names;
        nl.transitions = inner_left;
        nr.transitions = inner_right;
        for (std::size_t j = 0; j < ports; ++j) {
            // the block must be a product: pair counts c(l,r) = a(l) * b(r)
            std::map<std::pair<half, half>, std::size_t> c;
            std::set<half> ls, rs;
            for (std::size_t x = 0; x < cross.size(); ++x)
                if (block[x] == j) {
                    ++c[cross[x]];
                    ls.insert(cross[x].first);
                    rs.insert(cross[x].second);
                }
            auto count = [&](const half& l, const half& r) {
                auto it = c.find({l, r});
                return it == c.end() ? std::size_t{0} : it->second;
            };
            const auto& l0 = *ls.begin();
            const auto& r0 = *rs.begin();
            std::size_t g = 0;
            for (const auto& r : rs) g = std::gcd(g, count(l0, r));
            if (g == 0) return std::nullopt;
            std::map<half, std::size_t> a, b;
            for (const auto& r : rs) b[r] = count(l0, r) / g;
            for (const auto& l : ls) {
                if (b[r0] == 0 || count(l, r0) % b[r0]) return std::nullopt;
                a[l] = count(l, r0) / b[r0];
            }
            for (const auto& l : ls)
                for (const auto& r : rs)
                    if (a[l] == 0 || b[r] == 0 || a[l] * b[r] != count(l, r)) return std::nullopt;
            std::size_t k = 0;
            for (const auto& [h, m] : a)
                for (std::size_t i = 0; i < m; ++i)
                    nl.transitions.push_back({"u" + std::to_string(j) + "_" + std::to_string(k++), h.first, h.second, {}, {j}});
            k = 0;
            for (const auto& [h, m] : b)
                for (std::size_t i = 0; i < m; ++i)
                    nr.transitions.push_back({"v" + std::to_string(j) + "_" + std::to_string(k++), h.first, h.second, {j}, {}});
        }
        nl.contention = minimal_contention(nl);
        nr.contention = minimal_contention(nr);
        auto whole = seq_compose(nl, nr, {0, false});
        // fixed place map: tagged composite places to the subject's places
        net_iso f;
        std::vector<std::size_t> place_of(whole.places.size());
        for (std::size_t i = 0; i < p.left.size(); ++i) place_of[i] = p.left[i];
        for (std::size_t i = 0; i < p.right.size(); ++i) place_of[p.left.size() + i] = p.right[i];
        f.place_map = place_of;
        std::vector<bool> used(n.transitions.size(), false);
        for (const auto& t : whole.transitions) {
            index_list pre, post;
            for (auto q : t.pre) pre.push_back(place_of[q]);
            for (auto q : t.post) post.push_back(place_of[q]);
            std::sort(pre.begin(), pre.end());
            std::sort(post.begin(), post.end());
            bool hit = false;
            for (std::size_t u = 0; u < n.transitions.size(); ++u)
                if (!used[u] && n.transitions[u].pre == pre && n.transitions[u].post == post) {
                    used[u] = hit = true;
                    f.transition_map.push_back(u);
                    break;
                }
            if (!hit) return std::nullopt;
        }
        if (!is_iso(whole, n, f, iso_mode::structural)) return std::nullopt;
        return pure_split{ports, std::move(nl), std::move(nr), std::move(f)};
    };

    for (std::size_t ports = 0; ports <= n_max; ++ports) {
        if (ports == 0) {
            if (cross.empty()) return build({}, 0);
            continue;
        }
        if (ports > cross.size()) break;
        // restricted growth strings with exactly `ports` blocks
        std::vector<std::size_t> block(cross.size(), 0);
        std::optional<pure_split> found;
        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) -> bool {
            if (cross.size() - i < ports - used) return false;
            if (i == cross.size()) {
                if (used != ports) return false;
                found = build(block, ports);
                return found.has_value();
            }
            for (std::size_t b = 0; b <= used && b < ports; ++b) {
                block[i] = b;
                if (rec(i + 1, std::max(used, b + 1))) return true;
            }
            return false;
        };
        if (rec(0, 0)) return found;
    }
    return std::nullopt;
}

std::string to_string(const net& n, const network& nw)
{
    std::string out = "{";
    bool first = true;
    for (const auto& c : nw) {
        if (!first) out += ", ";
        first = false;
        out += to_string(n, c);
    }
    return out + "}";
}

} // namespace nwb
