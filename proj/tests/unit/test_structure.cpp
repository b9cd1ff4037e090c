#include "nwb/algebra.hpp"
#include "nwb/families.hpp"
#include "nwb/structure.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nwb;

namespace {

oriented_partition all_partitions_nth(std::size_t places, std::uint64_t mask)
{
    oriented_partition p;
    for (std::size_t i = 0; i < places; ++i) (mask >> i & 1 ? p.left : p.right).push_back(i);
    return p;
}

// random pure split: every left transition has at most one target, every
// right transition at most one source
std::pair<net, net> random_pure_split(std::mt19937& rng, std::size_t shared)
{
    std::uniform_int_distribution<std::size_t> small(1, 3);
    auto trim = [&](net n, bool right_side) {
        for (auto& t : n.transitions) {
            auto& v = right_side ? t.target : t.source;
            if (v.size() > 1) v.resize(1);
            if (t.pre.empty() && t.post.empty() && t.source.empty() && t.target.empty()) t.pre.push_back(0);
        }
        n.contention = minimal_contention(n);
        return n;
    };
    std::bernoulli_distribution coin(0.5);
    auto l = trim(oracle::random_net(rng, {small(rng), 1 + small(rng), coin(rng) ? 1u : 0u, shared, 0.4, 0.0}), true);
    auto r = trim(oracle::random_net(rng, {small(rng), 1 + small(rng), shared, coin(rng) ? 1u : 0u, 0.4, 0.0}), false);
    return {l, r};
}

} // namespace

TEST(Partition, Parsing)
{
    auto c4 = gen_family({family_kind::clique, 4, 1});
    auto p = parse_partition(c4, "0,1|2,3");
    EXPECT_EQ(p.left, (index_list{0, 1}));
    EXPECT_EQ(p.right, (index_list{2, 3}));
    auto q = parse_partition(c4, R"([["3","0"],["1","2"]])");
    EXPECT_EQ(q.left, (index_list{0, 3}));
    EXPECT_THROW((void)parse_partition(c4, "0,1|2"), invalid_argument);
    EXPECT_THROW((void)parse_partition(c4, "0,1,2,3|"), invalid_argument);
    EXPECT_THROW((void)parse_partition(c4, "0,1|1,2,3"), invalid_argument);
    EXPECT_THROW((void)parse_partition(c4, "0,1,2,3"), parse_error);
    EXPECT_THROW((void)parse_partition(c4, "0,9|1,2,3"), unknown_name);
}

TEST(ExtendedPorts, Cases)
{
    auto c4 = gen_family({family_kind::clique, 4, 1});
    auto p = make_partition(c4, {"0", "1"}, {"2", "3"});
    EXPECT_EQ(extended_ports(c4, p, side::right), (portset{port::in(2), port::out(2), port::in(3), port::out(3)}));
    EXPECT_EQ(extended_ports(c4, p, side::left), place_ports({0, 1}));
    net n = make_net(1, 0, {"p", "q"}, {});
    auto q = make_partition(n, {"p"}, {"q"});
    EXPECT_EQ(extended_ports(n, q, side::left), (portset{port::left_boundary(0), port::in(0), port::out(0)}));
}

TEST(Network, CliqueFour)
{
    auto c4 = gen_family({family_kind::clique, 4, 1});
    auto p = make_partition(c4, {"0", "1"}, {"2", "3"});
    auto nw = network_of(c4, p, direction::left_to_right);
    network want{{{port::out(2)}, {port::out(3)}}, {{port::in(2)}, {port::in(3)}}};
    EXPECT_EQ(nw, want);
    EXPECT_EQ(network_of(c4, p, direction::right_to_left),
              (network{{{port::out(0)}, {port::out(1)}}, {{port::in(0)}, {port::in(1)}}}));
    EXPECT_EQ(dimension(nw), 2u);
    EXPECT_EQ(lower_bound(c4, p), 2u);
}

TEST(Network, CliquesHaveTwoConnectionsEverywhere)
{
    for (std::size_t n : {3u, 4u, 5u}) {
        auto c = gen_family({family_kind::clique, n, 1});
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
            auto p = all_partitions_nth(n, mask);
            EXPECT_EQ(network_of(c, p, direction::left_to_right).size(), 2u);
            EXPECT_EQ(network_of(c, p, direction::right_to_left).size(), 2u);
            EXPECT_EQ(lower_bound(c, p), 2u);
        }
    }
}

TEST(Network, PureExampleDerived)
{
    auto n = fig6a_net();
    auto p = make_partition(n, {"0", "1"}, {"2", "3"});
    // derived from the definition; see the acceptance report for the listing check
    network l2r{{{port::in(2)}}, {{port::in(2)}, {port::in(2), port::in(3)}, {port::in(3)}}};
    EXPECT_EQ(network_of(n, p, direction::left_to_right), l2r);
    EXPECT_EQ(dimension(l2r), 2u);
    EXPECT_EQ(lower_bound(n, p), 2u);
}

TEST(Basis, Basics)
{
    EXPECT_TRUE(is_basis({}, network{}));
    EXPECT_TRUE(is_basis({}, network{connection{}}));
    connection a{{port::in(0)}};
    EXPECT_FALSE(is_basis({}, network{a}));
    EXPECT_TRUE(is_basis({a}, network{a}));
    EXPECT_EQ(dimension(network{}), 0u);
    auto c4 = gen_family({family_kind::clique, 4, 1});
    auto nw = network_of(c4, make_partition(c4, {"0", "1"}, {"2", "3"}), direction::left_to_right);
    EXPECT_TRUE(is_basis(basis_vector(nw.begin(), nw.end()), nw));
}

TEST(Basis, NestedConnections)
{
    connection small{{port::in(0)}};
    connection big{{port::in(0)}, {port::in(1)}};
    network nw{small, big};
    EXPECT_EQ(dimension(nw), 2u);
    EXPECT_FALSE(is_basis({big}, nw));
    EXPECT_TRUE(is_basis({small, connection{{port::in(1)}}}, nw));
}

TEST(Basis, DimensionAgainstExhaustiveSearch)
{
    std::mt19937 rng(113);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        auto n = oracle::random_net(rng, {4, 4, 1, 1, 0.35, 0.0});
        auto p = all_partitions_nth(4, 1 + rng() % 14);
        for (auto d : {direction::left_to_right, direction::right_to_left}) {
            auto nw = network_of(n, p, d);
            auto b = minimal_basis(nw);
            EXPECT_TRUE(is_basis(b, nw));
            EXPECT_TRUE(oracle::is_basis(b, nw));
            EXPECT_EQ(b.size(), oracle::dimension(nw));
            ++checked;
        }
    }
    EXPECT_EQ(checked, 600);
}

TEST(Network, RandomAgainstDefinition)
{
    std::mt19937 rng(127);
    for (int i = 0; i < 100; ++i) {
        auto n = oracle::random_net(rng, {4, 5, 1, 1, 0.35, 0.0});
        auto p = all_partitions_nth(4, 1 + rng() % 14);
        auto from = extended_ports(n, p, side::left);
        auto to = extended_ports(n, p, side::right);
        network want;
        for (const auto& q : from) {
            connection c;
            for (const auto& s : oracle::conn(n, q)) {
                portset t;
                std::set_intersection(s.begin(), s.end(), to.begin(), to.end(), std::inserter(t, t.end()));
                if (!t.empty()) c.insert(t);
            }
            if (!c.empty()) want.insert(c);
        }
        EXPECT_EQ(network_of(n, p, direction::left_to_right), want);
    }
}

TEST(Pure, Examples)
{
    EXPECT_TRUE(is_pure(fig6a_left(), fig6a_right()));
    EXPECT_FALSE(is_pure(fig6b_left(), fig6b_right()));
    net wide = make_net(0, 2, {}, {{"t", {}, {}, {}, {0, 1}}});
    EXPECT_FALSE(is_pure(wide, fig6a_right()));
    EXPECT_THROW((void)is_pure(component(component_id::R), fig6a_right()), boundary_mismatch);
}

TEST(Pure, EverySplitOfTheLibraryDecompositions)
{
    std::vector<family_spec> specs{{family_kind::tdelta, 2, 2}, {family_kind::tlambda, 3, 2},
                                   {family_kind::clique, 4, 1}, {family_kind::subset, 3, 1},
                                   {family_kind::grid, 3, 1}};
    for (const auto& s : specs) {
        auto d = decomp_family(s);
        for (const auto& split : seq_nodes(d.expr)) {
            auto l = eval_net(split.left, d.env);
            auto r = eval_net(split.right, d.env);
            EXPECT_TRUE(is_pure(l, r)) << to_string(s) << " at '" << split.path << "'";
            auto rep = check_proposition(l, r);
            EXPECT_TRUE(rep.passed()) << to_string(s) << " at '" << split.path << "'";
        }
    }
}

TEST(BoundaryConnection, PureExample)
{
    auto l = fig6a_left();
    auto r = fig6a_right();
    EXPECT_EQ(boundary_connection(l, r, side::left, 0), (connection{{port::out(0)}, {port::out(0), port::out(1)}}));
    EXPECT_EQ(boundary_connection(l, r, side::left, 1), (connection{{port::out(1)}}));
    EXPECT_EQ(boundary_connection(l, r, side::right, 0), (connection{{port::in(0)}}));
    EXPECT_EQ(boundary_connection(l, r, side::right, 1), (connection{{port::in(0), port::in(1)}, {port::in(1)}}));
    EXPECT_EQ(to_string(r, boundary_connection(l, r, side::right, 1)), "[<2-in,3-in>, <3-in>]");
    net lonely = make_net(0, 1, {"p"}, {});
    net other = make_net(1, 0, {}, {});
    EXPECT_TRUE(boundary_connection(lonely, other, side::left, 0).empty());
    EXPECT_THROW((void)boundary_connection(lonely, other, side::left, 1), invalid_argument);
}

TEST(Proposition, Examples)
{
    EXPECT_TRUE(check_proposition(fig6a_left(), fig6a_right()).passed());
    auto env = decomp_family({family_kind::clique, 4, 1}).env;
    auto l = eval_net(parse_expr("(up * up) ; S^2"), env);
    auto r = eval_net(parse_expr("S^2 ; (down * down)"), env);
    EXPECT_TRUE(check_proposition(l, r).passed());
    auto t = decomp_family({family_kind::tdelta, 2, 2});
    auto root = eval_net(t.expr.lhs(), t.env);
    auto rest = eval_net(t.expr.rhs(), t.env);
    EXPECT_TRUE(check_proposition(root, rest).passed());
    EXPECT_THROW((void)check_proposition(fig6b_left(), fig6b_right()), invalid_argument);
}

TEST(Proposition, RandomPureSplits)
{
    std::mt19937 rng(131);
    for (int i = 0; i < 300; ++i) {
        auto [l, r] = random_pure_split(rng, 1 + i % 3);
        ASSERT_TRUE(is_pure(l, r));
        auto rep = check_proposition(l, r);
        EXPECT_TRUE(rep.passed()) << (rep.violations.empty() ? "" : rep.violations[0]);
        auto whole = seq_compose(l, r);
        if (whole.left == 0 && whole.right == 0 && !l.places.empty() && !r.places.empty()) {
            oriented_partition p;
            for (std::size_t k = 0; k < l.places.size(); ++k) p.left.push_back(k);
            for (std::size_t k = 0; k < r.places.size(); ++k) p.right.push_back(l.places.size() + k);
            EXPECT_GE(l.right, lower_bound(whole, p));
        }
    }
}

TEST(Bound, NoCrossTransitions)
{
    net n = make_net(0, 0, {"a", "b"}, {{"t", {"a"}, {}, {}, {}}, {"u", {}, {"b"}, {}, {}}});
    auto p = make_partition(n, {"a"}, {"b"});
    EXPECT_EQ(lower_bound(n, p), 0u);
    auto s = min_pure_split(n, p, 3);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->n, 0u);
    EXPECT_EQ(s->left.transitions.size(), 1u);
    EXPECT_EQ(s->right.transitions.size(), 1u);
}

TEST(Split, Examples)
{
    auto n = fig6a_net();
    auto p = make_partition(n, {"0", "1"}, {"2", "3"});
    auto s = min_pure_split(n, p, 4);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->n, 2u);
    EXPECT_TRUE(is_pure(s->left, s->right));
    EXPECT_TRUE(is_iso(seq_compose(s->left, s->right, {0, false}), n, s->iso, iso_mode::structural));
    EXPECT_FALSE(min_pure_split(n, p, 1).has_value());

    auto c4 = gen_family({family_kind::clique, 4, 1});
    auto q = make_partition(c4, {"0", "1"}, {"2", "3"});
    auto t = min_pure_split(c4, q, 4);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->n, 2u);
    net open = make_net(1, 0, {"a", "b"}, {{"t", {"a"}, {"b"}, {0}, {}}});
    EXPECT_THROW((void)min_pure_split(open, make_partition(open, {"a"}, {"b"}), 2), invalid_argument);
}

TEST(Split, DuplicateCrossTransitions)
{
    net n = make_net(0, 0, {"a", "b", "c"},
                     {{"t", {"a"}, {"b"}, {}, {}}, {"u", {"a"}, {"b"}, {}, {}}, {"w", {"a"}, {"c"}, {}, {}}});
    auto p = make_partition(n, {"a"}, {"b", "c"});
    auto s = min_pure_split(n, p, 3);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->n, 1u);
    EXPECT_EQ(s->left.transitions.size(), 1u);
    EXPECT_EQ(s->right.transitions.size(), 3u);
    EXPECT_TRUE(is_iso(seq_compose(s->left, s->right, {0, false}), n, s->iso, iso_mode::structural));
}

TEST(Split, NeverBelowTheBound)
{
    std::mt19937 rng(137);
    int found = 0;
    for (int i = 0; i < 150; ++i) {
        auto n = oracle::random_net(rng, {4, 4, 0, 0, 0.3, 0.0});
        auto p = all_partitions_nth(4, 1 + rng() % 14);
        auto b = lower_bound(n, p);
        auto s = min_pure_split(n, p, 4);
        if (!s) continue;
        ++found;
        EXPECT_GE(s->n, b);
        EXPECT_TRUE(is_pure(s->left, s->right));
        EXPECT_TRUE(is_iso(seq_compose(s->left, s->right, {0, false}), n, s->iso, iso_mode::structural));
        EXPECT_TRUE(check_proposition(s->left, s->right).passed());
    }
    EXPECT_GT(found, 50);
}
