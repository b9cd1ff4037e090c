#include "nwb/automata.hpp"

#include "nwb/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace nwb {

namespace {

using state_id = boundary_nfa::state_id;

std::uint64_t width_mask(std::size_t w)
{
    return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
}

// Explicit edges plus the implicit idle loop.
std::vector<boundary_nfa::edge> moves(const boundary_nfa& a, state_id s)
{
    auto m = a.edges(s);
    m.push_back({step_label{}, s});
    return m;
}

template <typename Key>
class pair_index {
public:
    std::pair<state_id, bool> get(const Key& k)
    {
        auto [it, fresh] = ids_.emplace(k, static_cast<state_id>(ids_.size()));
        if (fresh) order_.push_back(k);
        return {it->second, fresh};
    }
    const Key& key(std::size_t i) const { return order_[i]; }
    std::size_t size() const { return order_.size(); }

private:
    std::map<Key, state_id> ids_;
    std::vector<Key> order_;
};

std::vector<std::vector<state_id>> epsilon_closures(const boundary_nfa& a)
{
    std::vector<std::vector<state_id>> out(a.num_states());
    for (state_id s = 0; s < a.num_states(); ++s) {
        std::vector<bool> seen(a.num_states(), false);
        std::vector<state_id> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            out[s].push_back(x);
            for (const auto& e : a.edges(x))
                if (e.label.is_epsilon() && !seen[e.to]) {
                    seen[e.to] = true;
                    stack.push_back(e.to);
                }
        }
        std::sort(out[s].begin(), out[s].end());
    }
    return out;
}

} // namespace

boundary_nfa::boundary_nfa(std::size_t left_width, std::size_t right_width) : left_(left_width), right_(right_width)
{
    if (left_width > max_boundary_width || right_width > max_boundary_width)
        throw invalid_argument("automaton boundary wider than 64 ports");
}

std::size_t boundary_nfa::num_edges() const
{
    std::size_t n = 0;
    for (const auto& v : out_) n += v.size();
    return n;
}

boundary_nfa::state_id boundary_nfa::add_state(bool accepting)
{
    out_.emplace_back();
    accepting_.push_back(accepting);
    return static_cast<state_id>(out_.size() - 1);
}

void boundary_nfa::add_edge(state_id from, step_label label, state_id to)
{
    if (from >= out_.size() || to >= out_.size()) throw invalid_argument("edge refers to an unknown state");
    if ((label.alpha & ~width_mask(left_)) || (label.beta & ~width_mask(right_)))
        throw invalid_argument("edge label wider than the automaton boundary");
    out_[from].push_back({label, to});
}

void boundary_nfa::set_initial(state_id s)
{
    if (s >= out_.size()) throw invalid_argument("initial state out of range");
    initial_ = s;
}

void boundary_nfa::set_accepting(state_id s, bool accepting)
{
    accepting_.at(s) = accepting;
}

void boundary_nfa::set_sink(std::optional<state_id> s)
{
    if (s && (*s >= out_.size() || accepting_[*s])) throw invalid_argument("sink must be an existing rejecting state");
    sink_ = s;
}

void boundary_nfa::canonicalize()
{
    for (auto& v : out_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

boundary_nfa seq_product(const boundary_nfa& a, const boundary_nfa& b)
{
    if (a.right_width() != b.left_width())
        throw boundary_mismatch("automaton widths " + std::to_string(a.right_width()) + " and " +
                                std::to_string(b.left_width()) + " do not meet");
    boundary_nfa out(a.left_width(), b.right_width());
    pair_index<std::pair<state_id, state_id>> index;
    index.get({a.initial(), b.initial()});
    out.add_state(a.is_accepting(a.initial()) && b.is_accepting(b.initial()));
    for (std::size_t i = 0; i < index.size(); ++i) {
        auto [x, y] = index.key(i);
        std::multimap<std::uint64_t, boundary_nfa::edge> by_alpha;
        for (const auto& e : moves(b, y)) by_alpha.emplace(e.label.alpha, e);
        for (const auto& ea : moves(a, x)) {
            auto [lo, hi] = by_alpha.equal_range(ea.label.beta);
            for (auto it = lo; it != hi; ++it) {
                const auto& eb = it->second;
                auto [id, fresh] = index.get({ea.to, eb.to});
                if (fresh) out.add_state(a.is_accepting(ea.to) && b.is_accepting(eb.to));
                step_label l{ea.label.alpha, eb.label.beta};
                if (l.is_epsilon() && id == i) continue;
                out.add_edge(static_cast<state_id>(i), l, id);
            }
        }
    }
    out.set_initial(0);
    out.canonicalize();
    return out;
}

boundary_nfa tensor_product(const boundary_nfa& a, const boundary_nfa& b)
{
    if (a.left_width() + b.left_width() > max_boundary_width || a.right_width() + b.right_width() > max_boundary_width)
        throw invalid_argument("tensor product wider than 64 ports");
    boundary_nfa out(a.left_width() + b.left_width(), a.right_width() + b.right_width());
    pair_index<std::pair<state_id, state_id>> index;
    index.get({a.initial(), b.initial()});
    out.add_state(a.is_accepting(a.initial()) && b.is_accepting(b.initial()));
    for (std::size_t i = 0; i < index.size(); ++i) {
        auto [x, y] = index.key(i);
        auto mb = moves(b, y);
        for (const auto& ea : moves(a, x))
            for (const auto& eb : mb) {
                auto [id, fresh] = index.get({ea.to, eb.to});
                if (fresh) out.add_state(a.is_accepting(ea.to) && b.is_accepting(eb.to));
                step_label l{ea.label.alpha | (eb.label.alpha << a.left_width()),
                             ea.label.beta | (eb.label.beta << a.right_width())};
                if (l.is_epsilon() && id == i) continue;
                out.add_edge(static_cast<state_id>(i), l, id);
            }
    }
    out.set_initial(0);
    out.canonicalize();
    return out;
}

boundary_nfa epsilon_close(const boundary_nfa& a)
{
    auto closure = epsilon_closures(a);
    // keep the states reachable from the initial one, in original order
    std::vector<bool> reach(a.num_states(), false);
    std::vector<state_id> stack{a.initial()};
    reach[a.initial()] = true;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (auto c : closure[s])
            for (const auto& e : a.edges(c))
                if (!e.label.is_epsilon() && !reach[e.to]) {
                    reach[e.to] = true;
                    stack.push_back(e.to);
                }
    }
    std::vector<state_id> rename(a.num_states(), 0);
    boundary_nfa out(a.left_width(), a.right_width());
    for (state_id s = 0; s < a.num_states(); ++s) {
        if (!reach[s]) continue;
        bool acc = std::any_of(closure[s].begin(), closure[s].end(), [&](auto c) { return a.is_accepting(c); });
        rename[s] = out.add_state(acc);
    }
    for (state_id s = 0; s < a.num_states(); ++s) {
        if (!reach[s]) continue;
        for (auto c : closure[s])
            for (const auto& e : a.edges(c))
                if (!e.label.is_epsilon()) out.add_edge(rename[s], e.label, rename[e.to]);
    }
    out.set_initial(rename[a.initial()]);
    out.canonicalize();
    return out;
}

bool has_epsilon_edges(const boundary_nfa& a)
{
    for (state_id s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s))
            if (e.label.is_epsilon()) return true;
    return false;
}

bool is_deterministic(const boundary_nfa& a)
{
    for (state_id s = 0; s < a.num_states(); ++s) {
        std::set<step_label> seen;
        for (const auto& e : a.edges(s))
            if (e.label.is_epsilon() || !seen.insert(e.label).second) return false;
    }
    return true;
}

boundary_nfa determinize(const boundary_nfa& a)
{
    if (has_epsilon_edges(a)) throw invalid_argument("determinize needs an epsilon-free automaton");
    boundary_nfa out(a.left_width(), a.right_width());
    pair_index<std::vector<state_id>> index;
    auto accepting = [&](const std::vector<state_id>& set) {
        return std::any_of(set.begin(), set.end(), [&](auto s) { return a.is_accepting(s); });
    };
    index.get({a.initial()});
    out.add_state(a.is_accepting(a.initial()));
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::map<step_label, std::vector<state_id>> succ;
        for (auto s : index.key(i))
            for (const auto& e : a.edges(s)) succ[e.label].push_back(e.to);
        for (auto& [label, targets] : succ) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            auto [id, fresh] = index.get(targets);
            if (fresh) out.add_state(accepting(targets));
            out.add_edge(static_cast<state_id>(i), label, id);
        }
    }
    out.set_sink(out.add_state(false));
    out.set_initial(0);
    out.canonicalize();
    return out;
}

boundary_nfa minimize(const boundary_nfa& d)
{
    if (!is_deterministic(d)) throw invalid_argument("minimize needs a deterministic automaton");
    const auto bits = d.left_width() + d.right_width();

    std::vector<state_id> states;
    std::vector<long> local(d.num_states(), -1);
    local[d.initial()] = 0;
    states.push_back(d.initial());
    for (std::size_t i = 0; i < states.size(); ++i)
        for (const auto& e : d.edges(states[i]))
            if (local[e.to] < 0) {
                local[e.to] = static_cast<long>(states.size());
                states.push_back(e.to);
            }
    std::set<step_label> symbol_set;
    for (auto s : states)
        for (const auto& e : d.edges(s)) symbol_set.insert(e.label);
    std::vector<step_label> symbols(symbol_set.begin(), symbol_set.end());
    const std::size_t n = states.size() + 1; // last slot is the dead state
    const std::size_t dead = n - 1;

    std::vector<std::vector<std::size_t>> delta(n, std::vector<std::size_t>(symbols.size(), dead));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (const auto& e : d.edges(states[i])) {
            auto k = std::lower_bound(symbols.begin(), symbols.end(), e.label) - symbols.begin();
            delta[i][k] = static_cast<std::size_t>(local[e.to]);
        }

    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < states.size(); ++i) cls[i] = d.is_accepting(states[i]) ? 1 : 0;
    cls[dead] = 0;
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sigs;
        std::vector<std::vector<std::size_t>> sig(n);
        for (std::size_t i = 0; i < n; ++i) {
            sig[i].push_back(cls[i]);
            for (auto t : delta[i]) sig[i].push_back(cls[t]);
            sigs.emplace(sig[i], 0);
        }
        std::size_t next = 0;
        for (auto& [k, v] : sigs) v = next++;
        for (std::size_t i = 0; i < n; ++i) cls[i] = sigs[sig[i]];
        if (next == classes) break;
        classes = next;
    }

    // classes with an empty language collapse into one, which is the dead class
    std::vector<bool> live(classes, false);
    for (std::size_t i = 0; i < states.size(); ++i)
        if (d.is_accepting(states[i])) live[cls[i]] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            if (!live[cls[i]])
                for (auto t : delta[i])
                    if (live[cls[t]]) {
                        live[cls[i]] = changed = true;
                        break;
                    }
    }
    std::vector<std::size_t> rep(classes, n);
    for (std::size_t i = 0; i < n; ++i)
        if (rep[cls[i]] == n) rep[cls[i]] = i;

    boundary_nfa out(d.left_width(), d.right_width());
    if (!live[cls[0]]) {
        out.set_sink(out.add_state(false));
        return out;
    }
    const double alphabet = bits >= 64 ? 1e30 : static_cast<double>((std::uint64_t{1} << bits) - 1);
    std::vector<long> number(classes, -1);
    std::vector<std::size_t> order{cls[0]};
    number[cls[0]] = 0;
    bool dead_needed = false;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t live_out = 0;
        for (std::size_t k = 0; k < symbols.size(); ++k) {
            auto c = cls[delta[rep[order[i]]][k]];
            if (!live[c]) continue;
            ++live_out;
            if (number[c] < 0) {
                number[c] = static_cast<long>(order.size());
                order.push_back(c);
            }
        }
        if (static_cast<double>(live_out) < alphabet) dead_needed = true;
    }
    for (auto c : order) out.add_state(d.is_accepting(states[rep[c]]));
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto r = rep[order[i]];
        for (std::size_t k = 0; k < symbols.size(); ++k) {
            auto c = cls[delta[r][k]];
            if (live[c]) out.add_edge(static_cast<state_id>(i), symbols[k], static_cast<state_id>(number[c]));
        }
    }
    if (dead_needed) out.set_sink(out.add_state(false));
    out.set_initial(0);
    return out;
}

boundary_nfa minimal_dfa(const boundary_nfa& a)
{
    return minimize(determinize(epsilon_close(a)));
}

bool accepts(const boundary_nfa& a, std::span<const step_label> w)
{
    auto closure = epsilon_closures(a);
    std::set<state_id> current(closure[a.initial()].begin(), closure[a.initial()].end());
    for (const auto& l : w) {
        if (l.is_epsilon()) continue;
        std::set<state_id> next;
        for (auto s : current)
            for (const auto& e : a.edges(s))
                if (e.label == l) next.insert(closure[e.to].begin(), closure[e.to].end());
        current = std::move(next);
        if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(), [&](auto s) { return a.is_accepting(s); });
}

bool is_trivially_accepting(const boundary_nfa& a)
{
    if (a.left_width() != 0 || a.right_width() != 0)
        throw invalid_argument("triviality is only defined for automata with empty boundaries");
    auto d = minimal_dfa(a);
    return d.is_accepting(d.initial());
}

bool is_trivially_rejecting(const boundary_nfa& a)
{
    return !is_trivially_accepting(a);
}

std::string to_dot(const boundary_nfa& a, bool compress)
{
    std::ostringstream o;
    o << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
    for (state_id s = 0; s < a.num_states(); ++s) {
        if (a.sink() == s) continue;
        o << "  s" << s << (a.is_accepting(s) ? " [shape=doublecircle]" : "") << ";\n";
    }
    o << "  start -> s" << a.initial() << ";\n";
    for (state_id s = 0; s < a.num_states(); ++s) {
        if (a.sink() == s) continue;
        std::map<state_id, std::vector<std::string>> grouped;
        for (const auto& e : a.edges(s))
            if (a.sink() != e.to) grouped[e.to].push_back(to_string(e.label, a.left_width(), a.right_width()));
        for (auto& [to, labels] : grouped) {
            std::set<std::string> pats(labels.begin(), labels.end());
            for (bool merged = compress; merged;) {
                merged = false;
                for (auto i = pats.begin(); i != pats.end() && !merged; ++i)
                    for (auto j = std::next(i); j != pats.end() && !merged; ++j) {
                        std::size_t diff = 0, at = 0;
                        for (std::size_t c = 0; c < i->size(); ++c)
                            if ((*i)[c] != (*j)[c]) ++diff, at = c;
                        if (diff == 1 && (*i)[at] != '*' && (*j)[at] != '*') {
                            auto p = *i;
                            p[at] = '*';
                            pats.erase(*j);
                            pats.erase(i);
                            pats.insert(p);
                            merged = true;
                        }
                    }
            }
            std::string label;
            for (const auto& p : pats) label += (label.empty() ? "" : "\\n") + p;
            o << "  s" << s << " -> s" << to << " [label=\"" << label << "\"];\n";
        }
    }
    o << "}\n";
    return o.str();
}

} // namespace nwb
