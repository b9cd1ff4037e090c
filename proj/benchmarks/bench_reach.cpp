#include "nwb/families.hpp"
#include "nwb/reach.hpp"
#include "nwb/semantics.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

using namespace nwb;

namespace {

reachability_problem deep_tree(std::size_t k)
{
    auto d = decomp_family({family_kind::tdelta, 2, k});
    auto g = gen_family({family_kind::tdelta, 2, k});
    std::vector<std::string> deepest;
    for (const auto& pl : g.places)
        if (static_cast<std::size_t>(std::count(pl.begin(), pl.end(), '.')) == k) deepest.push_back(pl);
    return d.problem({"r"}, deepest);
}

void tree_memo(benchmark::State& state)
{
    auto p = deep_tree(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_reach(p));
    state.counters["nodes"] = static_cast<double>(p.expr.node_count());
}
BENCHMARK(tree_memo)->DenseRange(4, 12, 2)->Unit(benchmark::kMicrosecond);

void tree_no_memo(benchmark::State& state)
{
    auto p = deep_tree(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_reach(p, {false, minimize_mode::every_node}));
    state.counters["nodes"] = static_cast<double>(p.expr.node_count());
}
BENCHMARK(tree_no_memo)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);

void tree_monolithic(benchmark::State& state)
{
    auto k = static_cast<std::size_t>(state.range(0));
    auto g = gen_family({family_kind::tdelta, 2, k});
    std::vector<std::string> deepest;
    for (const auto& pl : g.places)
        if (static_cast<std::size_t>(std::count(pl.begin(), pl.end(), '.')) == k) deepest.push_back(pl);
    auto x = make_marking(g, {"r"});
    auto y = make_marking(g, deepest);
    for (auto _ : state) benchmark::DoNotOptimize(reach_monolithic(g, x, y));
}
BENCHMARK(tree_monolithic)->DenseRange(2, 4, 1)->Unit(benchmark::kMicrosecond);

void clique_compositional(benchmark::State& state)
{
    family_spec s{family_kind::clique, static_cast<std::size_t>(state.range(0)), 1};
    auto d = decomp_family(s);
    auto g = gen_family(s);
    auto p = d.problem({g.places.front()}, {g.places.back()});
    for (auto _ : state) benchmark::DoNotOptimize(check_reach(p));
}
BENCHMARK(clique_compositional)->DenseRange(3, 8, 1)->Unit(benchmark::kMicrosecond);

void grid_compositional(benchmark::State& state)
{
    family_spec s{family_kind::grid, static_cast<std::size_t>(state.range(0)), 1};
    auto d = decomp_family(s);
    auto g = gen_family(s);
    auto p = d.problem({g.places.front()}, {g.places.back()});
    for (auto _ : state) benchmark::DoNotOptimize(check_reach(p));
}
BENCHMARK(grid_compositional)->DenseRange(2, 3, 1)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
