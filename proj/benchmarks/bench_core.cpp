#include "nwb/algebra.hpp"
#include "nwb/automata.hpp"
#include "nwb/families.hpp"
#include "nwb/iso.hpp"
#include "nwb/semantics.hpp"
#include "nwb/structure.hpp"

#include <benchmark/benchmark.h>

using namespace nwb;

namespace {

void clique_eval_net(benchmark::State& state)
{
    auto d = decomp_family({family_kind::clique, static_cast<std::size_t>(state.range(0)), 1});
    for (auto _ : state) benchmark::DoNotOptimize(eval_net(d.expr, d.env));
}
BENCHMARK(clique_eval_net)->DenseRange(3, 7, 1)->Unit(benchmark::kMicrosecond);

void subset_syncs(benchmark::State& state)
{
    auto env = decomp_family({family_kind::subset, static_cast<std::size_t>(state.range(0)), 1}).env;
    auto left = eval_net(power(wiring_expr::var("P"), static_cast<std::size_t>(state.range(0))), env);
    auto right = component(component_id::bot);
    for (auto _ : state) benchmark::DoNotOptimize(minimal_synchronisations(left, right));
}
BENCHMARK(subset_syncs)->DenseRange(2, 6, 1)->Unit(benchmark::kMicrosecond);

void clique_iso(benchmark::State& state)
{
    auto g = gen_family({family_kind::clique, static_cast<std::size_t>(state.range(0)), 1});
    auto d = decomp_family({family_kind::clique, static_cast<std::size_t>(state.range(0)), 1});
    auto e = eval_net(d.expr, d.env);
    for (auto _ : state) benchmark::DoNotOptimize(iso_check(e, g, iso_mode::structural));
}
BENCHMARK(clique_iso)->DenseRange(3, 7, 1)->Unit(benchmark::kMicrosecond);

void grid_pipeline(benchmark::State& state)
{
    auto g = gen_family({family_kind::grid, static_cast<std::size_t>(state.range(0)), 1});
    auto raw = build_nfa(g, make_marking(g, {g.places.front()}), {make_marking(g, {g.places.back()})});
    for (auto _ : state) benchmark::DoNotOptimize(minimal_dfa(raw));
    state.counters["states"] = static_cast<double>(raw.num_states());
}
BENCHMARK(grid_pipeline)->DenseRange(2, 3, 1)->Unit(benchmark::kMicrosecond);

void clique_dimension(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    auto c = gen_family({family_kind::clique, n, 1});
    oriented_partition p;
    for (std::size_t i = 0; i < n; ++i) (i < n / 2 ? p.left : p.right).push_back(i);
    for (auto _ : state) benchmark::DoNotOptimize(lower_bound(c, p));
}
BENCHMARK(clique_dimension)->DenseRange(4, 8, 1)->Unit(benchmark::kMicrosecond);

void pure_example_split(benchmark::State& state)
{
    auto n = fig6a_net();
    auto p = make_partition(n, {"0", "1"}, {"2", "3"});
    for (auto _ : state) benchmark::DoNotOptimize(min_pure_split(n, p, 4));
}
BENCHMARK(pure_example_split)->Unit(benchmark::kMicrosecond);

} // namespace
