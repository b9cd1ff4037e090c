#include "nwb/reach.hpp"

#include "nwb/semantics.hpp"
#include "nwb/serialize.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

namespace nwb {

namespace {

using key_id = std::size_t;

struct key_def {
    wiring_expr::op kind;
    key_id lhs = 0, rhs = 0;       // internal nodes
    std::string var;               // leaves
    std::vector<std::string> initial, final;
};

// Interns structural keys: leaves by (net serialization, markings), internal
// nodes by (operator, child keys). Ids are assigned children first.
class key_table {
public:
    explicit key_table(const reachability_problem& p) : p_(p) {}

    key_id leaf(const std::string& var, const std::string& path)
    {
        auto net_key = net_id(var);
        auto init = lookup(p_.initial, path);
        auto fin = lookup(p_.final, path);
        auto [it, fresh] = leaves_.emplace(std::tuple{net_key, init, fin}, defs_.size());
        if (fresh) defs_.push_back({wiring_expr::op::var, 0, 0, var, init, fin});
        return it->second;
    }

    key_id internal(wiring_expr::op kind, key_id l, key_id r)
    {
        auto [it, fresh] = internal_.emplace(std::tuple{kind, l, r}, defs_.size());
        if (fresh) defs_.push_back({kind, l, r, {}, {}, {}});
        return it->second;
    }

    const std::vector<key_def>& defs() const { return defs_; }

private:
    static std::vector<std::string> lookup(const leaf_markings& m, const std::string& path)
    {
        auto it = m.find(path);
        if (it == m.end()) return {};
        auto v = it->second;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    std::size_t net_id(const std::string& var)
    {
        if (auto it = var_ids_.find(var); it != var_ids_.end()) return it->second;
        auto text = to_json(p_.env.at(var), -1);
        auto [it, fresh] = nets_.emplace(text, nets_.size());
        var_ids_.emplace(var, it->second);
        return it->second;
    }

    const reachability_problem& p_;
    std::map<std::string, std::size_t> var_ids_;
    std::map<std::string, std::size_t> nets_;
    std::map<std::tuple<std::size_t, std::vector<std::string>, std::vector<std::string>>, key_id> leaves_;
    std::map<std::tuple<wiring_expr::op, key_id, key_id>, key_id> internal_;
    std::vector<key_def> defs_;
};

class evaluator {
public:
    evaluator(const reachability_problem& p, const eval_options& o) : p_(p), opts_(o) {}

    boundary_nfa leaf(const std::string& var, const std::vector<std::string>& init, const std::vector<std::string>& fin)
    {
        const auto& n = p_.env.at(var);
        auto raw = build_nfa(n, make_marking(n, init), {make_marking(n, fin)});
        note(raw);
        ++stats.nfa_builds;
        return opts_.mode == minimize_mode::every_node ? minimal_dfa(raw) : raw;
    }

    boundary_nfa internal(wiring_expr::op kind, const boundary_nfa& a, const boundary_nfa& b)
    {
        auto raw = kind == wiring_expr::op::seq ? seq_product(a, b) : tensor_product(a, b);
        note(raw);
        ++stats.nfa_builds;
        return minimal_dfa(raw);
    }

    eval_stats stats;

private:
    void note(const boundary_nfa& a)
    {
        stats.max_intermediate_states = std::max(stats.max_intermediate_states, a.num_states());
        stats.max_intermediate_boundary =
            std::max({stats.max_intermediate_boundary, a.left_width(), a.right_width()});
    }

    const reachability_problem& p_;
    eval_options opts_;
};

std::string child(const std::string& path, const char* side)
{
    return path.empty() ? side : path + "/" + side;
}

void check_markings(const reachability_problem& p)
{
    std::set<std::string> paths;
    std::map<std::string, std::string> var_of;
    for (auto& l : leaves(p.expr)) {
        paths.insert(l.path);
        var_of.emplace(l.path, l.var);
    }
    for (const auto* m : {&p.initial, &p.final})
        for (const auto& [path, names] : *m) {
            if (!paths.count(path)) throw unknown_name("marking refers to unknown leaf '" + path + "'");
            const auto& n = p.env.at(var_of.at(path));
            for (const auto& name : names)
                if (!n.find_place(name))
                    throw unknown_name("marking of leaf '" + path + "' names unknown place '" + name + "'");
        }
}

} // namespace

nfa_result eval_nfa(const reachability_problem& p, const eval_options& opts)
{
    (void)type_of(p.expr, p.env);
    check_markings(p);

    key_table keys(p);
    std::size_t occurrences = 0;
    std::function<key_id(const wiring_expr&, const std::string&)> index = [&](const wiring_expr& e,
                                                                               const std::string& path) {
        ++occurrences;
        if (e.is_var()) return keys.leaf(e.name(), path);
        auto l = index(e.lhs(), child(path, "L"));
        auto r = index(e.rhs(), child(path, "R"));
        return keys.internal(e.kind(), l, r);
    };
    auto root = index(p.expr, "");

    evaluator ev(p, opts);
    nfa_result out;
    if (opts.memo) {
        const auto& defs = keys.defs();
        std::vector<std::shared_ptr<const boundary_nfa>> done(defs.size());
        for (key_id k = 0; k < defs.size(); ++k) {
            const auto& d = defs[k];
            done[k] = std::make_shared<const boundary_nfa>(
                d.kind == wiring_expr::op::var ? ev.leaf(d.var, d.initial, d.final)
                                               : ev.internal(d.kind, *done[d.lhs], *done[d.rhs]));
        }
        out.nfa = *done[root];
        ev.stats.cache_hits = occurrences - defs.size();
    } else {
        std::function<boundary_nfa(const wiring_expr&, const std::string&)> run = [&](const wiring_expr& e,
                                                                                    const std::string& path) {
            if (e.is_var()) {
                auto get = [&](const leaf_markings& m) {
                    auto it = m.find(path);
                    return it == m.end() ? std::vector<std::string>{} : it->second;
                };
                return ev.leaf(e.name(), get(p.initial), get(p.final));
            }
            auto a = run(e.lhs(), child(path, "L"));
            auto b = run(e.rhs(), child(path, "R"));
            return ev.internal(e.kind(), a, b);
        };
        out.nfa = run(p.expr, "");
    }
    out.stats = ev.stats;
    out.stats.node_count = occurrences;
    out.stats.distinct_subterms = keys.defs().size();
    return out;
}

reach_result check_reach(const reachability_problem& p, const eval_options& opts)
{
    auto b = type_of(p.expr, p.env);
    if (b.left != 0 || b.right != 0)
        throw invalid_argument("reachability needs a closed expression, root has boundaries " +
                               std::to_string(b.left) + "->" + std::to_string(b.right));
    auto r = eval_nfa(p, opts);
    return {is_trivially_accepting(r.nfa), r.stats};
}

leaf_markings split_global_marking(const wiring_expr& e, const std::vector<std::string>& names)
{
    auto ls = leaves(e);
    leaf_markings out;
    for (const auto& name : names) {
        bool placed = false;
        for (const auto& l : ls) {
            if (l.path.empty()) {
                out[""].push_back(name);
                placed = true;
                break;
            }
            if (name.size() > l.path.size() + 1 && name.compare(0, l.path.size(), l.path) == 0 &&
                name[l.path.size()] == '/') {
                out[l.path].push_back(name.substr(l.path.size() + 1));
                placed = true;
                break;
            }
        }
        if (!placed) throw unknown_name("place '" + name + "' belongs to no leaf of the expression");
    }
    return out;
}

std::vector<std::string> join_leaf_markings(const wiring_expr&, const leaf_markings& m)
{
    std::vector<std::string> out;
    for (const auto& [path, names] : m)
        for (const auto& n : names) out.push_back(path.empty() ? n : path + "/" + n);
    return out;
}

reachability_problem subproblem(const reachability_problem& p, std::string_view path)
{
    reachability_problem out;
    out.expr = subterm(p.expr, path);
    out.env = p.env;
    const std::string prefix = path.empty() ? "" : std::string(path) + "/";
    auto reroot = [&](const leaf_markings& m) {
        leaf_markings r;
        for (const auto& [k, v] : m) {
            if (path.empty()) r[k] = v;
            else if (k == path) r[""] = v;
            else if (k.compare(0, prefix.size(), prefix) == 0) r[k.substr(prefix.size())] = v;
        }
        return r;
    };
    out.initial = reroot(p.initial);
    out.final = reroot(p.final);
    return out;
}

reachability_problem reassociate(const reachability_problem& p, assoc_policy policy)
{
    reachability_problem out;
    out.expr = reassociate(p.expr, policy);
    out.env = p.env;
    auto before = leaves(p.expr);
    auto after = leaves(out.expr);
    std::map<std::string, std::string> moved;
    for (std::size_t i = 0; i < before.size(); ++i) moved[before[i].path] = after[i].path;
    for (const auto& [k, v] : p.initial) out.initial[moved.at(k)] = v;
    for (const auto& [k, v] : p.final) out.final[moved.at(k)] = v;
    return out;
}

std::string to_json(const eval_stats& s)
{
    std::ostringstream o;
    o << "{\"node_count\": " << s.node_count << ", \"distinct_subterms\": " << s.distinct_subterms
      << ", \"nfa_builds\": " << s.nfa_builds << ", \"cache_hits\": " << s.cache_hits
      << ", \"max_intermediate_states\": " << s.max_intermediate_states
      << ", \"max_intermediate_boundary\": " << s.max_intermediate_boundary << "}";
    return o.str();
}

} // namespace nwb
