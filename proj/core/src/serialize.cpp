#include "nwb/serialize.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nwb {

using json = nlohmann::json;

namespace {

json names_of(const net& n, const index_list& v)
{
    json a = json::array();
    for (auto p : v) a.push_back(n.places[p]);
    return a;
}

index_list read_indices(const json& j, const char* field)
{
    index_list out;
    if (!j.contains(field)) return out;
    for (const auto& x : j.at(field)) {
        if (!x.is_number_unsigned()) throw invalid_argument(std::string("'") + field + "' must list natural numbers");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

} // namespace

std::string to_json(const net& n, int indent)
{
    json j;
    j["left"] = n.left;
    j["right"] = n.right;
    j["places"] = n.places;
    j["transitions"] = json::array();
    for (const auto& t : n.transitions) {
        j["transitions"].push_back({{"name", t.name},
                                    {"pre", names_of(n, t.pre)},
                                    {"post", names_of(n, t.post)},
                                    {"source", t.source},
                                    {"target", t.target}});
    }
    json pairs = json::array();
    for (std::size_t a = 0; a < n.transitions.size(); ++a)
        for (std::size_t b = a + 1; b < n.transitions.size(); ++b)
            if (n.contention.contains(a, b))
                pairs.push_back({n.transitions[a].name, n.transitions[b].name});
    j["contention"] = pairs;
    return j.dump(indent);
}

net net_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.byte, e.what());
    }
    try {
        net n;
        n.left = j.value("left", std::size_t{0});
        n.right = j.value("right", std::size_t{0});
        n.places = j.value("places", std::vector<std::string>{});
        for (const auto& jt : j.value("transitions", json::array())) {
            transition t;
            t.name = jt.at("name").get<std::string>();
            for (const auto& p : jt.value("pre", std::vector<std::string>{})) t.pre.push_back(n.place_index(p));
            for (const auto& p : jt.value("post", std::vector<std::string>{})) t.post.push_back(n.place_index(p));
            t.source = read_indices(jt, "source");
            t.target = read_indices(jt, "target");
            for (auto i : t.source)
                if (i >= n.left) throw invalid_argument("transition '" + t.name + "': source port out of range");
            for (auto i : t.target)
                if (i >= n.right) throw invalid_argument("transition '" + t.name + "': target port out of range");
            normalize(t);
            n.transitions.push_back(std::move(t));
        }
        if (j.contains("contention")) {
            n.contention = contention_relation(n.transitions.size());
            n.contention.make_reflexive();
            for (const auto& pair : j.at("contention")) {
                if (!pair.is_array() || pair.size() != 2) throw invalid_argument("contention entries must be pairs");
                n.contention.insert(n.transition_index(pair[0].get<std::string>()),
                                    n.transition_index(pair[1].get<std::string>()));
            }
        } else {
            n.contention = minimal_contention(n);
        }
        return n;
    } catch (const json::exception& e) {
        throw invalid_argument(std::string("malformed net: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw invalid_argument("cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

net load_net(const std::filesystem::path& file)
{
    try {
        return net_from_json(read_file(file));
    } catch (const parse_error& e) {
        throw parse_error(e.position(), file.string() + ": " + e.what());
    } catch (const error& e) {
        throw invalid_argument(file.string() + ": " + e.what());
    }
}

void save_net(const net& n, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out) throw invalid_argument("cannot write " + file.string());
    out << to_json(n) << "\n";
}

std::string to_dot(const net& n)
{
    std::ostringstream o;
    auto quote = [](const std::string& s) { return json(s).dump(); };
    o << "graph net {\n  rankdir=LR;\n  node [fontsize=10];\n";
    for (std::size_t i = 0; i < n.left; ++i)
        o << "  l" << i << " [shape=plaintext,label=\"" << i << "\"];\n";
    for (std::size_t j = 0; j < n.right; ++j)
        o << "  r" << j << " [shape=plaintext,label=\"" << j << "\"];\n";
    for (std::size_t p = 0; p < n.places.size(); ++p)
        o << "  p" << p << " [shape=record,label=\"<in> in|" << n.places[p] << "|<out> out\"];\n";
    for (std::size_t t = 0; t < n.transitions.size(); ++t) {
        const auto& tr = n.transitions[t];
        o << "  t" << t << " [shape=box,style=filled,fillcolor=black,width=0.1,height=0.3,label=\"\",xlabel="
          << quote(tr.name) << "];\n";
        for (auto p : tr.pre) o << "  p" << p << ":out -- t" << t << ";\n";
        for (auto p : tr.post) o << "  t" << t << " -- p" << p << ":in;\n";
        for (auto i : tr.source) o << "  l" << i << " -- t" << t << ";\n";
        for (auto j : tr.target) o << "  t" << t << " -- r" << j << ";\n";
    }
    const auto forced = minimal_contention(n);
    for (std::size_t a = 0; a < n.transitions.size(); ++a)
        for (std::size_t b = a + 1; b < n.transitions.size(); ++b)
            if (n.contention.contains(a, b) && !forced.contains(a, b))
                o << "  t" << a << " -- t" << b << " [style=dotted,constraint=false];\n";
    o << "}\n";
    return o.str();
}

} // namespace nwb
