#include "nwb/families.hpp"
#include "nwb/serialize.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace nwb;

TEST(Json, RoundtripFamilies)
{
    for (const auto& s : {"tdelta(2,2)", "tlambda(3,2)", "clique(4)", "subset(3)", "grid(2)"}) {
        auto n = gen_family(parse_family_spec(s));
        EXPECT_EQ(net_from_json(to_json(n)), n) << s;
        EXPECT_EQ(net_from_json(to_json(n, -1)), n) << s;
    }
}

TEST(Json, RoundtripRandomWithExtraContention)
{
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
        auto n = oracle::random_net(rng, {4, 5, 2, 2, 0.3, 0.3});
        EXPECT_EQ(net_from_json(to_json(n)), n);
    }
}

TEST(Json, MissingContentionIsMinimal)
{
    auto n = net_from_json(R"({"left":0,"right":1,"places":["p"],
        "transitions":[{"name":"t","pre":["p"],"target":[0]},{"name":"u","target":[0]}]})");
    EXPECT_TRUE(n.contention.contains(0, 1));
    EXPECT_EQ(n.transitions[1].pre, index_list{});
}

TEST(Json, Errors)
{
    EXPECT_THROW((void)net_from_json("{\"left\": 0,"), parse_error);
    try {
        (void)net_from_json("{\"left\": 0,");
    } catch (const parse_error& e) {
        EXPECT_GT(e.position(), 0u);
    }
    EXPECT_THROW((void)net_from_json(R"({"left":0,"right":0,"places":["p"],"transitions":[{"name":"t","pre":["q"]}]})"),
                 error);
    EXPECT_THROW((void)net_from_json(R"({"left":0,"right":0,"places":"p","transitions":[]})"), invalid_argument);
    EXPECT_THROW((void)net_from_json(R"({"left":1,"right":0,"places":[],"transitions":[{"name":"t","source":[3]}]})"),
                 error);
}

TEST(Json, Files)
{
    auto dir = std::filesystem::temp_directory_path() / "nwb_serialize_test";
    std::filesystem::create_directories(dir);
    auto n = gen_family({family_kind::clique, 3, 1});
    save_net(n, dir / "c3.json");
    EXPECT_EQ(load_net(dir / "c3.json"), n);
    EXPECT_THROW((void)load_net(dir / "missing.json"), error);
    std::filesystem::remove_all(dir);
}

TEST(Dot, NetExport)
{
    auto n = fig6a_net();
    auto d = to_dot(n);
    EXPECT_EQ(d.rfind("graph", 0), 0u);
    for (const auto& t : {"a", "b", "c", "d"}) EXPECT_NE(d.find(t), std::string::npos);
    EXPECT_EQ(d.find("dotted"), std::string::npos);
    n.contention.insert(0, 3);
    EXPECT_NE(to_dot(n).find("dotted"), std::string::npos);
}
