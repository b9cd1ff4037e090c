#include "nwb_tools/cli.hpp"

#include "nwb/families.hpp"
#include "nwb/iso.hpp"
#include "nwb/reach.hpp"
#include "nwb/serialize.hpp"
#include "nwb/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace nwb::cli {

namespace {

using json = nlohmann::json;

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

net load_net_arg(const std::string& arg)
{
    constexpr std::string_view prefix = "family:";
    if (arg.rfind(prefix, 0) == 0) return named_net(std::string_view(arg).substr(prefix.size()));
    try {
        return load_net(arg);
    } catch (const error& e) {
        throw error(arg + ": " + e.what());
    }
}

void write_text(const std::string& text, const std::string& file, std::ostream& out)
{
    if (file.empty() || file == "-") {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(file);
    if (!f) throw error("cannot write " + file);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

json network_json(const net& n, const network& nw)
{
    json arr = json::array();
    for (const auto& c : nw) {
        json jc = json::array();
        for (const auto& s : c) {
            json js = json::array();
            for (const auto& p : s) js.push_back(to_string(n, p));
            jc.push_back(js);
        }
        arr.push_back(jc);
    }
    return arr;
}

json iso_json(const net& a, const net& b, const net_iso& f)
{
    json places = json::object();
    for (std::size_t i = 0; i < f.place_map.size(); ++i) places[a.places[i]] = b.places[f.place_map[i]];
    json trans = json::object();
    for (std::size_t i = 0; i < f.transition_map.size(); ++i)
        trans[a.transitions[i].name] = b.transitions[f.transition_map[i]].name;
    return {{"places", places}, {"transitions", trans}};
}

void print_iso(std::ostream& out, const net& a, const net& b, const net_iso& f)
{
    for (std::size_t i = 0; i < f.place_map.size(); ++i)
        out << "place " << a.places[i] << " -> " << b.places[f.place_map[i]] << '\n';
    for (std::size_t i = 0; i < f.transition_map.size(); ++i)
        out << "transition " << a.transitions[i].name << " -> " << b.transitions[f.transition_map[i]].name << '\n';
}

minimize_mode parse_mode(const std::string& s)
{
    if (s == "every_node" || s == "every-node") return minimize_mode::every_node;
    if (s == "internal_only" || s == "internal-only") return minimize_mode::internal_only;
    throw invalid_argument("unknown minimize mode '" + s + "' (every_node, internal_only)");
}

std::vector<direction> parse_directions(const std::string& s)
{
    if (s == "l2r" || s == "left_to_right") return {direction::left_to_right};
    if (s == "r2l" || s == "right_to_left") return {direction::right_to_left};
    if (s == "both") return {direction::left_to_right, direction::right_to_left};
    throw invalid_argument("unknown direction '" + s + "' (l2r, r2l, both)");
}

const char* direction_name(direction d)
{
    return d == direction::left_to_right ? "left_to_right" : "right_to_left";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Compositional reachability and structure analysis for nets with boundaries", "nwb"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine readable output");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a family net or its decomposition problem");
    std::string gen_spec, gen_family_name, gen_params, gen_out, gen_initial, gen_final;
    bool gen_decomp = false;
    gen->add_option("spec", gen_spec, "family spec such as tdelta(2,2), or a component or example name");
    gen->add_option("--family", gen_family_name, "tdelta, tlambda, clique, subset or grid");
    gen->add_option("--params", gen_params, "comma separated parameters, e.g. 2,2");
    gen->add_option("--out,-o", gen_out, "output file (default stdout)");
    gen->add_flag("--decomp", gen_decomp, "write the library decomposition as a problem file");
    gen->add_option("--initial", gen_initial, "initial marking, comma separated generated place names");
    gen->add_option("--final", gen_final, "final marking, comma separated generated place names");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the wiring expression of a problem to a net");
    std::string eval_problem, eval_out;
    eval->add_option("--problem,-p", eval_problem, "problem file")->required();
    eval->add_option("--out,-o", eval_out, "output file (default stdout)");

    // reach
    auto* reach = app.add_subcommand("reach", "check reachability compositionally");
    std::string reach_problem, reach_mode = "every_node";
    bool reach_stats = false, reach_no_memo = false;
    reach->add_option("--problem,-p", reach_problem, "problem file")->required();
    reach->add_flag("--stats", reach_stats, "print evaluation statistics");
    reach->add_flag("--no-memo", reach_no_memo, "rebuild automata for repeated subterms");
    reach->add_option("--minimize-mode", reach_mode, "every_node or internal_only");

    // width
    auto* wid = app.add_subcommand("width", "width of the problem's decomposition");
    std::string width_problem;
    wid->add_option("--problem,-p", width_problem, "problem file")->required();

    // network, dim, bound, split
    std::string s_net, s_partition, s_direction = "both";
    std::size_t max_n = 4;
    bool dim_basis = false;
    std::string split_left_out, split_right_out;
    auto add_structure = [&](CLI::App* sub, bool with_direction) {
        sub->add_option("--net,-n", s_net, "net file or family:SPEC")->required();
        sub->add_option("--partition", s_partition, "left and right place names, e.g. 0,1|2,3")->required();
        if (with_direction) sub->add_option("--direction", s_direction, "l2r, r2l or both");
    };
    auto* netw = app.add_subcommand("network", "networks of an oriented partition");
    add_structure(netw, true);
    auto* dim = app.add_subcommand("dim", "dimension of the networks of an oriented partition");
    add_structure(dim, true);
    dim->add_flag("--basis", dim_basis, "also print a smallest basis");
    auto* bound = app.add_subcommand("bound", "lower bound on the shared boundary of a pure split");
    add_structure(bound, false);
    auto* split = app.add_subcommand("split", "smallest pure split along a partition");
    add_structure(split, false);
    split->add_option("--max-n", max_n, "largest shared boundary to try");
    split->add_option("--out-left", split_left_out, "write the left net");
    split->add_option("--out-right", split_right_out, "write the right net");

    // iso
    auto* iso = app.add_subcommand("iso", "isomorphism check between two nets");
    std::string iso_a, iso_b;
    bool iso_structural = false;
    iso->add_option("--a", iso_a, "net file or family:SPEC")->required();
    iso->add_option("--b", iso_b, "net file or family:SPEC")->required();
    iso->add_flag("--structural", iso_structural, "ignore contention beyond the minimal one");

    // dot
    auto* dot = app.add_subcommand("dot", "Graphviz export of a net or of a minimal automaton");
    std::string dot_net, dot_nfa, dot_path, dot_out;
    auto* dot_net_opt = dot->add_option("--net,-n", dot_net, "net file or family:SPEC");
    auto* dot_nfa_opt = dot->add_option("--nfa", dot_nfa, "problem file; exports the minimal automaton");
    dot_net_opt->excludes(dot_nfa_opt);
    dot->add_option("--path", dot_path, "subterm path for --nfa, e.g. R/L");
    dot->add_option("--out,-o", dot_out, "output file (default stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (gen->parsed()) {
            family_spec fs;
            if (!gen_spec.empty() && !gen_decomp) {
                write_text(to_json(named_net(gen_spec)), gen_out, out);
                return exit_ok;
            }
            if (!gen_spec.empty()) {
                fs = parse_family_spec(gen_spec);
            } else if (!gen_family_name.empty()) {
                std::vector<std::size_t> params;
                for (const auto& p : split_list(gen_params)) {
                    try {
                        params.push_back(std::stoul(p));
                    } catch (const std::exception&) {
                        throw invalid_argument("parameter '" + p + "' is not a number");
                    }
                }
                fs = make_family_spec(gen_family_name, params);
            } else {
                throw invalid_argument("gen needs a family spec or --family");
            }
            if (gen_decomp) {
                auto d = decomp_family(fs);
                auto p = d.problem(split_list(gen_initial), split_list(gen_final));
                write_text(to_json(p, d.binding_refs), gen_out, out);
            } else {
                write_text(to_json(gen_family(fs)), gen_out, out);
            }
            return exit_ok;
        }
        if (eval->parsed()) {
            auto p = load_problem(eval_problem);
            write_text(to_json(eval_net(p.expr, p.env)), eval_out, out);
            return exit_ok;
        }
        if (reach->parsed()) {
            auto p = load_problem(reach_problem);
            eval_options opts{!reach_no_memo, parse_mode(reach_mode)};
            auto r = check_reach(p, opts);
            const char* word = r.reachable ? "REACHABLE" : "UNREACHABLE";
            if (as_json) {
                json j{{"verdict", word}, {"reachable", r.reachable}};
                if (reach_stats) j["stats"] = json::parse(to_json(r.stats));
                out << j.dump(2) << '\n';
            } else {
                out << word << '\n';
                if (reach_stats) {
                    const auto& s = r.stats;
                    out << "node_count " << s.node_count << '\n'
                        << "distinct_subterms " << s.distinct_subterms << '\n'
                        << "nfa_builds " << s.nfa_builds << '\n'
                        << "cache_hits " << s.cache_hits << '\n'
                        << "max_intermediate_states " << s.max_intermediate_states << '\n'
                        << "max_intermediate_boundary " << s.max_intermediate_boundary << '\n';
                }
            }
            return r.reachable ? exit_ok : exit_negative;
        }
        if (wid->parsed()) {
            auto p = load_problem(width_problem);
            auto k = width(p.expr, p.env);
            if (as_json)
                out << json{{"width", k}, {"expression", p.expr.to_string()}}.dump(2) << '\n';
            else
                out << k << '\n';
            return exit_ok;
        }
        if (netw->parsed() || dim->parsed()) {
            auto n = load_net_arg(s_net);
            auto part = parse_partition(n, s_partition);
            json j = json::object();
            for (auto d : parse_directions(s_direction)) {
                auto nw = network_of(n, part, d);
                if (netw->parsed()) {
                    if (as_json)
                        j[direction_name(d)] = network_json(n, nw);
                    else
                        out << direction_name(d) << ' ' << to_string(n, nw) << '\n';
                } else {
                    auto b = minimal_basis(nw);
                    if (as_json) {
                        json e{{"dimension", b.size()}};
                        if (dim_basis) e["basis"] = network_json(n, network(b.begin(), b.end()));
                        j[direction_name(d)] = e;
                    } else {
                        out << direction_name(d) << ' ' << b.size();
                        if (dim_basis) {
                            out << ' ' << '(';
                            for (std::size_t i = 0; i < b.size(); ++i) out << (i ? ", " : "") << to_string(n, b[i]);
                            out << ')';
                        }
                        out << '\n';
                    }
                }
            }
            if (as_json) out << j.dump(2) << '\n';
            return exit_ok;
        }
        if (bound->parsed()) {
            auto n = load_net_arg(s_net);
            auto b = lower_bound(n, parse_partition(n, s_partition));
            if (as_json)
                out << json{{"lower_bound", b}}.dump(2) << '\n';
            else
                out << b << '\n';
            return exit_ok;
        }
        if (split->parsed()) {
            auto n = load_net_arg(s_net);
            auto s = min_pure_split(n, parse_partition(n, s_partition), max_n);
            if (!s) {
                if (as_json)
                    out << json{{"found", false}, {"max_n", max_n}}.dump(2) << '\n';
                else
                    out << "no pure split with n <= " << max_n << '\n';
                return exit_negative;
            }
            if (!split_left_out.empty()) save_net(s->left, split_left_out);
            if (!split_right_out.empty()) save_net(s->right, split_right_out);
            if (as_json) {
                json j{{"found", true},
                       {"n", s->n},
                       {"left", json::parse(to_json(s->left))},
                       {"right", json::parse(to_json(s->right))}};
                out << j.dump(2) << '\n';
            } else {
                out << s->n << '\n';
            }
            return exit_ok;
        }
        if (iso->parsed()) {
            auto a = load_net_arg(iso_a);
            auto b = load_net_arg(iso_b);
            auto f = iso_check(a, b, iso_structural ? iso_mode::structural : iso_mode::exact);
            if (as_json) {
                json j{{"isomorphic", f.has_value()}};
                if (f) j["witness"] = iso_json(a, b, *f);
                out << j.dump(2) << '\n';
            } else if (f) {
                out << "isomorphic\n";
                print_iso(out, a, b, *f);
            } else {
                out << "not isomorphic\n";
            }
            return f ? exit_ok : exit_negative;
        }
        if (dot->parsed()) {
            std::string text;
            if (!dot_net.empty()) {
                text = to_dot(load_net_arg(dot_net));
            } else if (!dot_nfa.empty()) {
                auto p = load_problem(dot_nfa);
                if (!dot_path.empty()) p = subproblem(p, dot_path);
                text = to_dot(eval_nfa(p).nfa);
            } else {
                throw invalid_argument("dot needs --net or --nfa");
            }
            if (as_json)
                out << json{{"dot", text}}.dump(2) << '\n';
            else
                write_text(text, dot_out, out);
            return exit_ok;
        }
    } catch (const std::exception& e) {
        if (as_json)
            out << json{{"error", e.what()}}.dump(2) << '\n';
        err << "nwb: error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

} // namespace nwb::cli
