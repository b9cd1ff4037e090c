#include "nwb/families.hpp"
#include "nwb/reach.hpp"
#include "nwb/serialize.hpp"

#include <json.hpp>

namespace nwb {

using json = nlohmann::json;

namespace {

net resolve_binding(const std::string& var, const json& b, const std::filesystem::path& base)
{
    try {
        if (b.is_object()) return net_from_json(b.dump());
        if (!b.is_string()) throw invalid_argument("binding must be a string or a net object");
        auto s = b.get<std::string>();
        if (s.rfind("family:", 0) == 0) return named_net(s.substr(7));
        return load_net(base / s);
    } catch (const error& e) {
        throw invalid_argument("binding '" + var + "': " + e.what());
    }
}

leaf_markings read_markings(const json& j, const wiring_expr& e, const char* field)
{
    if (!j.contains(field)) return {};
    const auto& m = j.at(field);
    if (m.is_array()) return split_global_marking(e, m.get<std::vector<std::string>>());
    if (!m.is_object()) throw invalid_argument(std::string("'") + field + "' must be an object or a list");
    leaf_markings out;
    for (const auto& [path, names] : m.items()) out[path] = names.get<std::vector<std::string>>();
    return out;
}

} // namespace

reachability_problem problem_from_json(std::string_view text, const std::filesystem::path& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.byte, e.what());
    }
    try {
        reachability_problem p;
        try {
            p.expr = parse_expr(j.at("expr").get<std::string>());
        } catch (const parse_error& e) {
            throw parse_error(e.position(), std::string("in expr: ") + e.what());
        }
        const auto bindings = j.value("bindings", json::object());
        for (const auto& [var, b] : bindings.items())
            p.env.emplace(var, resolve_binding(var, b, base_dir));
        (void)type_of(p.expr, p.env);
        p.initial = read_markings(j, p.expr, "initial");
        p.final = read_markings(j, p.expr, "final");
        return p;
    } catch (const json::exception& e) {
        throw invalid_argument(std::string("malformed problem: ") + e.what());
    }
}

reachability_problem load_problem(const std::filesystem::path& file)
{
    auto text = read_file(file);
    try {
        return problem_from_json(text, file.parent_path());
    } catch (const parse_error& e) {
        throw parse_error(e.position(), file.string() + ": " + e.what());
    } catch (const boundary_mismatch& e) {
        throw boundary_mismatch(file.string() + ": " + e.what());
    } catch (const error& e) {
        throw invalid_argument(file.string() + ": " + e.what());
    }
}

std::string to_json(const reachability_problem& p, const std::map<std::string, std::string>& binding_refs, int indent)
{
    json j;
    j["expr"] = p.expr.to_string();
    j["bindings"] = json::object();
    for (const auto& [var, n] : p.env) {
        auto it = binding_refs.find(var);
        if (it != binding_refs.end()) j["bindings"][var] = it->second;
        else j["bindings"][var] = json::parse(to_json(n, -1));
    }
    j["initial"] = json::object();
    for (const auto& [k, v] : p.initial) j["initial"][k] = v;
    j["final"] = json::object();
    for (const auto& [k, v] : p.final) j["final"][k] = v;
    return j.dump(indent);
}

} // namespace nwb
