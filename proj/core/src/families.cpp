#include "nwb/families.hpp"

#include <cctype>
#include <functional>

namespace nwb {

namespace {

using ts = transition_spec;

struct emitter {
    std::vector<std::vector<std::pair<std::string, std::string>>> leaves; // (local, generated) per leaf
    void none() { leaves.emplace_back(); }
    void one(std::string local, std::string gen) { leaves.push_back({{std::move(local), std::move(gen)}}); }
};

std::string child(const std::string& node, std::size_t i)
{
    return node + "." + std::to_string(i);
}

void check(const family_spec& s)
{
    if (s.n < 1) throw invalid_argument("family parameter n must be at least 1");
    bool tree = s.kind == family_kind::tdelta || s.kind == family_kind::tlambda;
    if (tree && s.k < 1) throw invalid_argument("tree depth k must be at least 1");
    if (s.kind == family_kind::subset && s.n > 16) throw invalid_argument("subset nets are limited to n <= 16");
}

std::pair<std::string, std::vector<std::size_t>> split_call(std::string_view text)
{
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    auto open = text.find('(');
    if (open == std::string_view::npos) return {std::string(text), {}};
    if (text.back() != ')') throw parse_error(text.size(), "expected ')' in '" + std::string(text) + "'");
    std::vector<std::size_t> args;
    auto inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t i = 0;
    while (i <= inner.size()) {
        auto j = inner.find(',', i);
        if (j == std::string_view::npos) j = inner.size();
        auto a = trim(inner.substr(i, j - i));
        if (a.empty()) {
            if (inner.empty()) break;
            throw parse_error(open + 1 + i, "empty argument in '" + std::string(text) + "'");
        }
        std::size_t v = 0;
        for (char c : a) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw parse_error(open + 1 + i, "argument is not a natural number in '" + std::string(text) + "'");
            v = v * 10 + static_cast<std::size_t>(c - '0');
        }
        args.push_back(v);
        i = j + 1;
    }
    return {std::string(trim(text.substr(0, open))), args};
}

net tree_net(const family_spec& s, bool delta)
{
    std::vector<std::string> places{"r"};
    std::vector<ts> trans;
    std::vector<std::string> level{"r"};
    for (std::size_t d = 0; d < s.k; ++d) {
        std::vector<std::string> next;
        for (const auto& node : level) {
            std::vector<std::string> kids;
            for (std::size_t i = 0; i < s.n; ++i) kids.push_back(child(node, i));
            if (delta) {
                trans.push_back({"t_" + node, {node}, kids, {}, {}});
            } else {
                for (const auto& c : kids) trans.push_back({"t_" + c, {node}, {c}, {}, {}});
            }
            places.insert(places.end(), kids.begin(), kids.end());
            next.insert(next.end(), kids.begin(), kids.end());
        }
        level = std::move(next);
    }
    return make_net(0, 0, std::move(places), trans);
}

} // namespace

net component(component_id id)
{
    switch (id) {
    case component_id::R: return make_net(0, 1, {"p"}, {{"t", {"p"}, {}, {}, {0}}});
    case component_id::I: return make_net(1, 1, {}, {{"t", {}, {}, {0}, {0}}});
    case component_id::bot: return make_net(1, 0, {}, {{"t", {}, {}, {0}, {}}});
    case component_id::up: return make_net(0, 1, {}, {});
    case component_id::down: return make_net(1, 0, {}, {});
    case component_id::P:
        return make_net(1, 1, {"p"},
                        {{"a", {}, {}, {0}, {0}}, {"b", {}, {"p"}, {0}, {}}, {"c", {}, {"p"}, {0}, {0}}});
    case component_id::Ldelta: return make_net(1, 1, {"p"}, {{"x", {}, {"p"}, {0}, {0}}});
    case component_id::Ndelta:
        return make_net(1, 2, {"p"}, {{"x", {}, {"p"}, {0}, {0}}, {"y", {"p"}, {}, {}, {1}}});
    case component_id::Llambda:
        return make_net(1, 1, {"p"}, {{"take", {}, {"p"}, {0}, {}}, {"pass", {}, {}, {0}, {0}}});
    case component_id::Nlambda:
        return make_net(1, 2, {"p"},
                        {{"take", {}, {"p"}, {0}, {}}, {"pass", {}, {}, {0}, {0}}, {"fire", {"p"}, {}, {}, {1}}});
    case component_id::S:
        return make_net(2, 2, {"p"},
                        {{"send0", {"p"}, {}, {}, {0}},
                         {"recv0", {}, {"p"}, {0}, {}},
                         {"fwd0", {}, {}, {0}, {0}},
                         {"send1", {"p"}, {}, {1}, {}},
                         {"recv1", {}, {"p"}, {}, {1}},
                         {"fwd1", {}, {}, {1}, {1}}});
    }
    throw unknown_name("unknown component");
}

std::string component_name(component_id id)
{
    static const char* names[] = {"R", "I", "bot", "up", "down", "Ldelta", "Ndelta", "Llambda", "Nlambda", "S", "P"};
    return names[static_cast<int>(id)];
}

std::vector<component_id> all_components()
{
    return {component_id::R,      component_id::I,      component_id::bot,     component_id::up,
            component_id::down,   component_id::Ldelta, component_id::Ndelta,  component_id::Llambda,
            component_id::Nlambda, component_id::S,     component_id::P};
}

net grid_column(std::size_t n, column_role role)
{
    if (n < 1) throw invalid_argument("grid size must be at least 1");
    bool in = role == column_role::middle || role == column_role::last;
    bool out = role == column_role::first || role == column_role::middle;
    std::vector<std::string> places;
    for (std::size_t r = 0; r < n; ++r) places.push_back(std::to_string(r));
    std::vector<ts> trans;
    for (std::size_t r = 0; r + 1 < n; ++r)
        trans.push_back({"v" + std::to_string(r), {places[r]}, {places[r + 1]}, {}, {}});
    for (std::size_t r = 0; r < n; ++r) {
        if (out) trans.push_back({"out" + std::to_string(r), {places[r]}, {}, {}, {r}});
        if (in) trans.push_back({"in" + std::to_string(r), {}, {places[r]}, {r}, {}});
    }
    return make_net(in ? n : 0, out ? n : 0, std::move(places), trans);
}

net fig6a_net()
{
    return make_net(0, 0, {"0", "1", "2", "3"},
                    {{"a", {"0"}, {"2"}, {}, {}},
                     {"b", {"0", "1"}, {"2"}, {}, {}},
                     {"c", {"1"}, {"2", "3"}, {}, {}},
                     {"d", {"1"}, {"3"}, {}, {}}});
}

net fig6a_left()
{
    return make_net(0, 2, {"0", "1"},
                    {{"a", {"0"}, {}, {}, {0}}, {"b", {"0", "1"}, {}, {}, {0}}, {"c", {"1"}, {}, {}, {1}}});
}

net fig6a_right()
{
    return make_net(2, 0, {"2", "3"},
                    {{"d", {}, {"2"}, {0}, {}}, {"e", {}, {"2", "3"}, {1}, {}}, {"f", {}, {"3"}, {1}, {}}});
}

net fig6b_left()
{
    return make_net(0, 2, {"0", "1"}, {{"u", {"0"}, {}, {}, {0, 1}}, {"w", {"1"}, {}, {}, {1}}});
}

net fig6b_right()
{
    return make_net(2, 0, {"2", "3"}, {{"x", {}, {"2"}, {0}, {}}, {"y", {}, {"3"}, {1}, {}}});
}

family_spec make_family_spec(std::string_view name, const std::vector<std::size_t>& params)
{
    family_spec s;
    bool tree = false;
    if (name == "tdelta") s.kind = family_kind::tdelta, tree = true;
    else if (name == "tlambda") s.kind = family_kind::tlambda, tree = true;
    else if (name == "clique") s.kind = family_kind::clique;
    else if (name == "subset") s.kind = family_kind::subset;
    else if (name == "grid") s.kind = family_kind::grid;
    else throw unknown_name("unknown family '" + std::string(name) + "'");
    if (params.size() != (tree ? 2u : 1u))
        throw invalid_argument("family '" + std::string(name) + "' takes " + (tree ? "2" : "1") + " parameter(s)");
    s.n = params[0];
    if (tree) s.k = params[1];
    check(s);
    return s;
}

family_spec parse_family_spec(std::string_view text)
{
    auto [name, args] = split_call(text);
    return make_family_spec(name, args);
}

std::string to_string(const family_spec& s)
{
    switch (s.kind) {
    case family_kind::tdelta: return "tdelta(" + std::to_string(s.n) + "," + std::to_string(s.k) + ")";
    case family_kind::tlambda: return "tlambda(" + std::to_string(s.n) + "," + std::to_string(s.k) + ")";
    case family_kind::clique: return "clique(" + std::to_string(s.n) + ")";
    case family_kind::subset: return "subset(" + std::to_string(s.n) + ")";
    case family_kind::grid: return "grid(" + std::to_string(s.n) + ")";
    }
    return {};
}

net gen_family(const family_spec& s)
{
    check(s);
    switch (s.kind) {
    case family_kind::tdelta: return tree_net(s, true);
    case family_kind::tlambda: return tree_net(s, false);
    case family_kind::clique: {
        std::vector<std::string> places;
        for (std::size_t i = 0; i < s.n; ++i) places.push_back(std::to_string(i));
        std::vector<ts> trans;
        for (std::size_t i = 0; i < s.n; ++i)
            for (std::size_t j = 0; j < s.n; ++j)
                if (i != j) trans.push_back({places[i] + "->" + places[j], {places[i]}, {places[j]}, {}, {}});
        return make_net(0, 0, places, trans);
    }
    case family_kind::subset: {
        std::vector<std::string> places{"S"};
        for (std::size_t i = 0; i < s.n; ++i) places.push_back(std::to_string(i));
        std::vector<ts> trans;
        for (std::size_t mask = 0; mask < (std::size_t{1} << s.n); ++mask) {
            std::vector<std::string> post;
            std::string name = "S->{";
            for (std::size_t i = 0; i < s.n; ++i)
                if (mask >> i & 1) {
                    name += (post.empty() ? "" : ",") + std::to_string(i);
                    post.push_back(std::to_string(i));
                }
            trans.push_back({name + "}", {"S"}, post, {}, {}});
        }
        return make_net(0, 0, places, trans);
    }
    case family_kind::grid: {
        auto g = [](std::size_t r, std::size_t c) { return "g" + std::to_string(r) + "_" + std::to_string(c); };
        std::vector<std::string> places;
        for (std::size_t r = 0; r < s.n; ++r)
            for (std::size_t c = 0; c < s.n; ++c) places.push_back(g(r, c));
        std::vector<ts> trans;
        for (std::size_t r = 0; r < s.n; ++r)
            for (std::size_t c = 0; c < s.n; ++c) {
                auto id = std::to_string(r) + "_" + std::to_string(c);
                if (c + 1 < s.n) trans.push_back({"h" + id, {g(r, c)}, {g(r, c + 1)}, {}, {}});
                if (r + 1 < s.n) trans.push_back({"v" + id, {g(r, c)}, {g(r + 1, c)}, {}, {}});
            }
        return make_net(0, 0, places, trans);
    }
    }
    throw invalid_argument("unknown family");
}

std::size_t expected_width(const family_spec& s)
{
    switch (s.kind) {
    case family_kind::subset: return 1;
    case family_kind::grid: return s.n;
    case family_kind::tdelta:
    case family_kind::tlambda: return s.k == 1 ? 1 : 2;
    default: return 2;
    }
}

family_decomposition decomp_family(const family_spec& s)
{
    check(s);
    family_decomposition d;
    emitter em;
    auto bind = [&](const std::string& var, net n, std::string ref) {
        d.env.emplace(var, std::move(n));
        d.binding_refs.emplace(var, "family:" + ref);
        return wiring_expr::var(var);
    };
    auto bind_component = [&](component_id id) { return bind(component_name(id), component(id), component_name(id)); };
    using E = wiring_expr;

    switch (s.kind) {
    case family_kind::tdelta:
    case family_kind::tlambda: {
        const bool delta = s.kind == family_kind::tdelta;
        auto leaf = bind_component(delta ? component_id::Ldelta : component_id::Llambda);
        auto node = bind_component(delta ? component_id::Ndelta : component_id::Nlambda);
        auto wire = bind_component(component_id::I);
        auto cap = bind_component(delta ? component_id::bot : component_id::down);
        auto root = bind_component(component_id::R);
        std::vector<E> levels{E::seq(power(leaf, s.n), cap)};
        for (std::size_t h = 2; h <= s.k; ++h)
            levels.push_back(E::seq(power(E::seq(node, E::tensor(wire, levels.back())), s.n), cap));
        d.expr = E::seq(root, levels.back());
        std::function<void(const std::string&, std::size_t)> emit = [&](const std::string& v, std::size_t h) {
            for (std::size_t i = 0; i < s.n; ++i) {
                em.one("p", child(v, i));
                if (h > 1) {
                    em.none();
                    emit(child(v, i), h - 1);
                }
            }
            em.none();
        };
        em.one("p", "r");
        emit("r", s.k);
        break;
    }
    case family_kind::clique: {
        auto up = bind_component(component_id::up);
        auto down = bind_component(component_id::down);
        auto S = bind_component(component_id::S);
        d.expr = E::seq(E::seq(E::tensor(up, up), power(S, s.n)), E::tensor(down, down));
        em.none();
        em.none();
        for (std::size_t i = 0; i < s.n; ++i) em.one("p", std::to_string(i));
        em.none();
        em.none();
        break;
    }
    case family_kind::subset: {
        auto R = bind_component(component_id::R);
        auto P = bind_component(component_id::P);
        auto bot = bind_component(component_id::bot);
        d.expr = E::seq(E::seq(R, power(P, s.n)), bot);
        em.one("p", "S");
        for (std::size_t i = 0; i < s.n; ++i) em.one("p", std::to_string(i));
        em.none();
        break;
    }
    case family_kind::grid: {
        auto n = std::to_string(s.n);
        auto column = [&](std::size_t c) {
            std::vector<std::pair<std::string, std::string>> ps;
            for (std::size_t r = 0; r < s.n; ++r)
                ps.emplace_back(std::to_string(r), "g" + std::to_string(r) + "_" + std::to_string(c));
            em.leaves.push_back(std::move(ps));
        };
        if (s.n == 1) {
            d.expr = bind("gsingle", grid_column(1, column_role::single), "gsingle(1)");
            column(0);
            break;
        }
        auto first = bind("gfirst", grid_column(s.n, column_role::first), "gfirst(" + n + ")");
        auto last = bind("glast", grid_column(s.n, column_role::last), "glast(" + n + ")");
        E e = first;
        if (s.n > 2) e = E::seq(e, power(bind("gmid", grid_column(s.n, column_role::middle), "gmid(" + n + ")"), s.n - 2));
        d.expr = E::seq(e, last);
        for (std::size_t c = 0; c < s.n; ++c) column(c);
        break;
    }
    }

    auto occ = leaves(d.expr);
    if (occ.size() != em.leaves.size()) throw error("internal error: leaf bookkeeping out of step");
    for (std::size_t i = 0; i < occ.size(); ++i)
        for (const auto& [local, gen] : em.leaves[i])
            d.place_map[gen] = occ[i].path.empty() ? local : occ[i].path + "/" + local;
    return d;
}

leaf_markings family_decomposition::localize(const std::vector<std::string>& generated_places) const
{
    std::vector<std::string> global;
    for (const auto& g : generated_places) {
        auto it = place_map.find(g);
        if (it == place_map.end()) throw unknown_name("unknown place '" + g + "'");
        global.push_back(it->second);
    }
    return split_global_marking(expr, global);
}

reachability_problem family_decomposition::problem(const std::vector<std::string>& initial,
                                                   const std::vector<std::string>& final) const
{
    return {expr, env, localize(initial), localize(final)};
}

net named_net(std::string_view spec)
{
    auto [name, args] = split_call(spec);
    for (auto id : all_components())
        if (name == component_name(id)) {
            if (!args.empty()) throw invalid_argument("component '" + name + "' takes no parameters");
            return component(id);
        }
    auto one_arg = [&]() {
        if (args.size() != 1) throw invalid_argument("'" + name + "' takes one parameter");
        return args[0];
    };
    if (name == "gfirst") return grid_column(one_arg(), column_role::first);
    if (name == "gmid") return grid_column(one_arg(), column_role::middle);
    if (name == "glast") return grid_column(one_arg(), column_role::last);
    if (name == "gsingle") return grid_column(args.empty() ? 1 : one_arg(), column_role::single);
    if (name == "fig6a") return fig6a_net();
    if (name == "fig6a_left") return fig6a_left();
    if (name == "fig6a_right") return fig6a_right();
    if (name == "fig6b_left") return fig6b_left();
    if (name == "fig6b_right") return fig6b_right();
    return gen_family(make_family_spec(name, args));
}

} // namespace nwb
