#include "nwb/semantics.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace nwb {

namespace {

class stepper {
public:
    explicit stepper(const net& n) : n_(n)
    {
        if (n.left > max_boundary_width || n.right > max_boundary_width)
            throw invalid_argument("boundary wider than 64 ports");
        for (const auto& t : n.transitions) {
            pre_.push_back(to_bitset(t.pre, n.places.size()));
            post_.push_back(to_bitset(t.post, n.places.size()));
            std::uint64_t a = 0, b = 0;
            for (auto i : t.source) a |= std::uint64_t{1} << i;
            for (auto j : t.target) b |= std::uint64_t{1} << j;
            label_.push_back({a, b});
        }
    }

    void check(const marking& x) const
    {
        if (x.size() != n_.places.size())
            throw invalid_argument("marking has " + std::to_string(x.size()) + " places, net has " +
                                   std::to_string(n_.places.size()));
    }

    std::vector<lts_edge> steps(const marking& x) const
    {
        check(x);
        index_list enabled;
        for (std::size_t t = 0; t < pre_.size(); ++t)
            if (pre_[t].is_subset_of(x) && !post_[t].intersects(x)) enabled.push_back(t);
        std::vector<lts_edge> out;
        index_list chosen;
        bitset blocked(pre_.size());
        rec(x, enabled, 0, chosen, blocked, x, step_label{}, out);
        return out;
    }

    bool fires(std::size_t t, const marking& x) const
    {
        return pre_[t].is_subset_of(x) && !post_[t].intersects(x);
    }
    marking fire(std::size_t t, const marking& x) const { return (x - pre_[t]) | post_[t]; }
    std::size_t size() const { return pre_.size(); }

private:
    void rec(const marking& from, const index_list& enabled, std::size_t next, index_list& chosen, bitset& blocked,
             const marking& to, step_label label, std::vector<lts_edge>& out) const
    {
        out.push_back({from, label, to, chosen});
        for (std::size_t i = next; i < enabled.size(); ++i) {
            auto t = enabled[i];
            if (blocked[t]) continue;
            auto saved = blocked;
            blocked |= n_.contention.row(t);
            chosen.push_back(t);
            // members of an MI set have disjoint pre and post sets, so firing
            // them one after another on the running marking is the same step
            rec(from, enabled, i + 1, chosen, blocked, (to - pre_[t]) | post_[t],
                {label.alpha | label_[t].alpha, label.beta | label_[t].beta}, out);
            chosen.pop_back();
            blocked = std::move(saved);
        }
    }

    const net& n_;
    std::vector<bitset> pre_, post_;
    std::vector<step_label> label_;
};

} // namespace

std::vector<lts_edge> enabled_steps(const net& n, const marking& x)
{
    return stepper(n).steps(x);
}

explored_lts explore(const net& n, const marking& initial)
{
    stepper st(n);
    st.check(initial);
    explored_lts lts;
    std::unordered_map<marking, std::size_t> ids;
    ids.emplace(initial, 0);
    lts.states.push_back(initial);
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        auto steps = st.steps(lts.states[i]);
        for (const auto& e : steps)
            if (ids.emplace(e.to, lts.states.size()).second) lts.states.push_back(e.to);
        lts.edges.push_back(std::move(steps));
    }
    return lts;
}

boundary_nfa build_nfa(const net& n, const marking& initial, const std::vector<marking>& finals)
{
    for (const auto& f : finals)
        if (f.size() != n.places.size()) throw invalid_argument("final marking does not fit the net");
    auto lts = explore(n, initial);
    boundary_nfa a(n.left, n.right);
    std::unordered_map<marking, boundary_nfa::state_id> ids;
    for (const auto& x : lts.states) {
        bool acc = std::find(finals.begin(), finals.end(), x) != finals.end();
        ids.emplace(x, a.add_state(acc));
    }
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        for (const auto& e : lts.edges[i]) {
            auto to = ids.at(e.to);
            if (e.label.is_epsilon() && to == i) continue;
            a.add_edge(static_cast<boundary_nfa::state_id>(i), e.label, to);
        }
    a.set_initial(0);
    a.canonicalize();
    return a;
}

bool reach_monolithic(const net& n, const marking& initial, const marking& final)
{
    if (n.left != 0 || n.right != 0) throw invalid_argument("reachability oracle needs a closed net (0->0)");
    stepper st(n);
    st.check(initial);
    st.check(final);
    std::unordered_map<marking, bool> seen{{initial, true}};
    std::deque<marking> queue{initial};
    while (!queue.empty()) {
        auto x = std::move(queue.front());
        queue.pop_front();
        if (x == final) return true;
        for (std::size_t t = 0; t < st.size(); ++t)
            if (st.fires(t, x)) {
                auto y = st.fire(t, x);
                if (seen.emplace(y, true).second) queue.push_back(std::move(y));
            }
    }
    return false;
}

} // namespace nwb
