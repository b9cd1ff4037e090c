#include "nwb/families.hpp"
#include "nwb/reach.hpp"
#include "nwb/semantics.hpp"
#include "nwb/serialize.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace nwb;

namespace {

const eval_options all_modes[] = {
    {true, minimize_mode::every_node},
    {true, minimize_mode::internal_only},
    {false, minimize_mode::every_node},
    {false, minimize_mode::internal_only},
};

std::vector<std::string> random_subset(std::mt19937& rng, const std::vector<std::string>& names)
{
    std::bernoulli_distribution coin(0.35);
    std::vector<std::string> out;
    for (const auto& n : names)
        if (coin(rng)) out.push_back(n);
    return out;
}

reachability_problem global_problem(const wiring_expr& e, const variable_assignment& env,
                                    const std::vector<std::string>& init, const std::vector<std::string>& fin)
{
    return {e, env, split_global_marking(e, init), split_global_marking(e, fin)};
}

// structural keys: leaves by variable and local markings, nodes by operator
std::string key_of(const reachability_problem& p, const wiring_expr& e, const std::string& path,
                   std::set<std::string>& keys)
{
    std::string k;
    if (e.is_var()) {
        auto get = [&](const leaf_markings& m) {
            auto it = m.find(path);
            auto v = it == m.end() ? std::vector<std::string>{} : it->second;
            std::sort(v.begin(), v.end());
            std::string s;
            for (const auto& x : v) s += x + ",";
            return s;
        };
        k = "(" + e.name() + "|" + get(p.initial) + "|" + get(p.final) + ")";
    } else {
        auto sub = [&](const char* side) { return path.empty() ? std::string(side) : path + "/" + side; };
        k = std::string(e.kind() == wiring_expr::op::seq ? "S" : "T") + "(" + key_of(p, e.lhs(), sub("L"), keys) +
            key_of(p, e.rhs(), sub("R"), keys) + ")";
    }
    keys.insert(k);
    return k;
}

} // namespace

TEST(Reach, TreeExample)
{
    auto d = decomp_family({family_kind::tdelta, 2, 2});
    auto p = d.problem({"r"}, {"r.0.0", "r.0.1", "r.1.0", "r.1.1"});
    for (const auto& o : all_modes) EXPECT_TRUE(check_reach(p, o).reachable);
    auto root = eval_nfa(p);
    EXPECT_EQ(root.nfa.num_states(), 1u);
    EXPECT_TRUE(is_trivially_accepting(root.nfa));
    for (const auto& o : all_modes) EXPECT_FALSE(check_reach(d.problem({"r"}, {"r", "r.1.0"}), o).reachable);
}

TEST(Reach, SubsetExample)
{
    auto d = decomp_family({family_kind::subset, 3, 1});
    EXPECT_TRUE(check_reach(d.problem({"S"}, {"0", "2"})).reachable);
    EXPECT_FALSE(check_reach(d.problem({"S"}, {"0", "S"})).reachable);
    EXPECT_TRUE(check_reach(d.problem({"S"}, {})).reachable);
}

TEST(Reach, EmptyNet)
{
    variable_assignment env{{"e", make_net(0, 0, {}, {})}};
    EXPECT_TRUE(check_reach({wiring_expr::var("e"), env, {}, {}}).reachable);
}

TEST(Reach, InitialEqualsFinal)
{
    std::mt19937 rng(97);
    auto d = decomp_family({family_kind::clique, 4, 1});
    auto g = gen_family({family_kind::clique, 4, 1});
    for (int i = 0; i < 10; ++i) {
        auto m = random_subset(rng, g.places);
        EXPECT_TRUE(check_reach(d.problem(m, m)).reachable);
    }
}

TEST(Reach, OpenExpressionRejected)
{
    variable_assignment env{{"R", component(component_id::R)}};
    EXPECT_THROW((void)check_reach({wiring_expr::var("R"), env, {}, {}}), invalid_argument);
    auto r = eval_nfa({wiring_expr::var("R"), env, {{"", {"p"}}}, {}});
    EXPECT_EQ(r.nfa.right_width(), 1u);
}

TEST(Reach, SingleLeafIsThePipeline)
{
    auto r = component(component_id::R);
    variable_assignment env{{"R", r}};
    auto got = eval_nfa({wiring_expr::var("R"), env, {{"", {"p"}}}, {}});
    auto want = minimal_dfa(build_nfa(r, make_marking(r, {"p"}), {marking(1)}));
    EXPECT_EQ(got.nfa, want);
}

TEST(Reach, FamiliesAgainstMonolithic)
{
    std::mt19937 rng(101);
    std::vector<family_spec> specs{{family_kind::tdelta, 2, 2},  {family_kind::tlambda, 2, 2},
                                   {family_kind::tlambda, 3, 2}, {family_kind::clique, 4, 1},
                                   {family_kind::subset, 4, 1},  {family_kind::grid, 3, 1}};
    for (const auto& s : specs) {
        auto d = decomp_family(s);
        auto g = gen_family(s);
        for (int i = 0; i < 8; ++i) {
            auto init = random_subset(rng, g.places);
            auto fin = random_subset(rng, g.places);
            bool want = reach_monolithic(g, make_marking(g, init), make_marking(g, fin));
            for (const auto& o : all_modes) EXPECT_EQ(check_reach(d.problem(init, fin), o).reachable, want);
        }
    }
}

TEST(Reach, RandomExpressionsAgainstMonolithic)
{
    std::mt19937 rng(103);
    for (int i = 0; i < 40; ++i) {
        variable_assignment env;
        env["a"] = oracle::random_net(rng, {2, 3, 0, 1, 0.4, 0.1});
        env["b"] = oracle::random_net(rng, {2, 3, 1, 1, 0.4, 0.1});
        env["c"] = oracle::random_net(rng, {1, 3, 1, 2, 0.4, 0.1});
        env["d"] = oracle::random_net(rng, {2, 3, 2, 0, 0.4, 0.1});
        auto e = parse_expr("a ; b^2 ; c ; (b * b) ; d");
        auto whole = eval_net(e, env);
        for (int k = 0; k < 5; ++k) {
            auto init = random_subset(rng, whole.places);
            auto x = make_marking(whole, init);
            // bias towards reachable targets
            auto run_end = oracle::random_firing_end(whole, oracle::to_set(x), rng, 3);
            auto fin = k % 2 ? marking_names(whole, oracle::to_marking(run_end, whole.places.size()))
                             : random_subset(rng, whole.places);
            bool want = reach_monolithic(whole, x, make_marking(whole, fin));
            auto p = global_problem(e, env, init, fin);
            for (const auto& o : all_modes) EXPECT_EQ(check_reach(p, o).reachable, want);
        }
    }
}

TEST(Memo, StatsOnTrees)
{
    for (std::size_t k = 2; k <= 8; ++k) {
        auto d = decomp_family({family_kind::tdelta, 2, k});
        auto g = gen_family({family_kind::tdelta, 2, k});
        std::vector<std::string> deepest;
        for (const auto& pl : g.places)
            if (static_cast<std::size_t>(std::count(pl.begin(), pl.end(), '.')) == k) deepest.push_back(pl);
        auto p = d.problem({"r"}, deepest);
        auto on = check_reach(p);
        EXPECT_TRUE(on.reachable);
        std::set<std::string> keys;
        (void)key_of(p, p.expr, "", keys);
        EXPECT_EQ(on.stats.nfa_builds, keys.size());
        EXPECT_EQ(on.stats.distinct_subterms, keys.size());
        EXPECT_EQ(on.stats.node_count, p.expr.node_count());
        EXPECT_EQ(on.stats.cache_hits + on.stats.nfa_builds, on.stats.node_count);
        EXPECT_LT(on.stats.nfa_builds, on.stats.node_count);
        // frozen from the key count above: four new keys per level
        EXPECT_EQ(on.stats.nfa_builds, 4 * k + 4);
        EXPECT_LE(on.stats.max_intermediate_boundary, 2u);
        if (k <= 6) {
            auto off = check_reach(p, {false, minimize_mode::every_node});
            EXPECT_EQ(off.stats.nfa_builds, off.stats.node_count);
            EXPECT_EQ(off.stats.cache_hits, 0u);
            EXPECT_EQ(off.reachable, on.reachable);
        }
    }
}

TEST(Markings, SplitJoinRoundtrip)
{
    auto d = decomp_family({family_kind::tdelta, 2, 2});
    auto whole = eval_net(d.expr, d.env);
    std::mt19937 rng(107);
    for (int i = 0; i < 20; ++i) {
        auto m = random_subset(rng, whole.places);
        auto back = join_leaf_markings(d.expr, split_global_marking(d.expr, m));
        std::sort(back.begin(), back.end());
        std::sort(m.begin(), m.end());
        EXPECT_EQ(back, m);
    }
    EXPECT_THROW((void)split_global_marking(d.expr, {"Q/p"}), unknown_name);
}

TEST(Subproblem, Rerooting)
{
    auto d = decomp_family({family_kind::tdelta, 2, 2});
    auto p = d.problem({"r"}, {"r.0.0", "r.0.1"});
    std::string b1;
    for (const auto& l : leaves(p.expr))
        if (l.var == "Ldelta") {
            b1 = l.path.substr(0, l.path.size() - 4);
            break;
        }
    auto s = subproblem(p, b1);
    EXPECT_EQ(s.expr.to_string(), "Ldelta ; Ldelta ; bot");
    EXPECT_TRUE(s.initial.empty());
    EXPECT_EQ(s.final.size(), 2u);
    EXPECT_EQ(s.final.count("L/L"), 1u);
    auto m = eval_nfa(s).nfa;
    EXPECT_EQ(m.num_states() - (m.sink() ? 1 : 0), 2u);
}

TEST(Reassociate, VerdictPreserved)
{
    std::mt19937 rng(109);
    for (auto s : {family_spec{family_kind::tdelta, 2, 3}, family_spec{family_kind::clique, 5, 1},
                   family_spec{family_kind::grid, 3, 1}}) {
        auto d = decomp_family(s);
        auto g = gen_family(s);
        for (int i = 0; i < 5; ++i) {
            auto p = d.problem(random_subset(rng, g.places), random_subset(rng, g.places));
            bool v = check_reach(p).reachable;
            for (auto pol : {assoc_policy::left, assoc_policy::right, assoc_policy::balanced})
                EXPECT_EQ(check_reach(reassociate(p, pol)).reachable, v);
        }
    }
}

TEST(Problem, JsonRoundtripAndErrors)
{
    auto d = decomp_family({family_kind::subset, 3, 1});
    auto p = d.problem({"S"}, {"1"});
    auto text = to_json(p, d.binding_refs);
    auto q = problem_from_json(text);
    EXPECT_EQ(q.expr, p.expr);
    EXPECT_EQ(q.initial, p.initial);
    EXPECT_EQ(q.final, p.final);
    EXPECT_EQ(check_reach(q).reachable, check_reach(p).reachable);

    // inline nets when no reference is known
    auto inl = problem_from_json(to_json(p, {}));
    EXPECT_EQ(inl.env.at("P"), p.env.at("P"));

    // global marking form
    auto g = problem_from_json(R"({"expr":"R ; P^2 ; bot","bindings":{"R":"family:R","P":"family:P","bot":"family:bot"},
        "initial":["L/L/p"],"final":["L/R/L/p"]})");
    EXPECT_TRUE(check_reach(g).reachable);

    EXPECT_THROW((void)problem_from_json("{"), parse_error);
    EXPECT_THROW((void)problem_from_json(R"({"expr":"R ; ; bot","bindings":{}})"), parse_error);
    EXPECT_THROW((void)problem_from_json(R"({"expr":"R ; bot","bindings":{"R":"family:R"}})"), unknown_name);
    EXPECT_THROW((void)problem_from_json(R"({"expr":"R ; R","bindings":{"R":"family:R"}})"), boundary_mismatch);
    EXPECT_THROW((void)problem_from_json(R"({"expr":"R","bindings":{"R":7}})"), invalid_argument);
}

TEST(Problem, BundledFiles)
{
    auto t = load_problem(std::filesystem::path(NWB_DATA_DIR) / "tdelta22.json");
    EXPECT_TRUE(check_reach(t).reachable);
    auto s = load_problem(std::filesystem::path(NWB_DATA_DIR) / "subset5.json");
    EXPECT_EQ(width(s.expr, s.env), 1u);
    try {
        (void)load_problem(std::filesystem::path(NWB_DATA_DIR) / "missing.json");
        FAIL();
    } catch (const error& e) {
        EXPECT_NE(std::string(e.what()).find("missing.json"), std::string::npos);
    }
}

TEST(Stats, Json)
{
    eval_stats s{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(to_json(s), "{\"node_count\": 1, \"distinct_subterms\": 2, \"nfa_builds\": 3, \"cache_hits\": 4, "
                          "\"max_intermediate_states\": 5, \"max_intermediate_boundary\": 6}");
}
