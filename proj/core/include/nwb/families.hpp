#pragma once

#include "nwb/reach.hpp"
#include "nwb/wiring.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nwb {

enum class family_kind { tdelta, tlambda, clique, subset, grid };

struct family_spec {
    family_kind kind = family_kind::tdelta;
    std::size_t n = 1;
    std::size_t k = 1; // depth, trees only
};

// "tdelta(2,3)", "clique(4)". Throws parse_error or invalid_argument.
[[nodiscard]] family_spec parse_family_spec(std::string_view text);
[[nodiscard]] family_spec make_family_spec(std::string_view name, const std::vector<std::size_t>& params);
[[nodiscard]] std::string to_string(const family_spec& s);

// Place names: trees "r", "r.0", "r.0.1", ...; clique "0".."n-1";
// subset "S", "0".."n-1"; grid "g<row>_<col>".
[[nodiscard]] net gen_family(const family_spec& s);

struct family_decomposition {
    wiring_expr expr = wiring_expr::var("x");
    variable_assignment env;
    // binding references usable in problem files, e.g. "family:Ndelta"
    std::map<std::string, std::string> binding_refs;
    // generated place -> place of eval_net(expr, env)
    std::map<std::string, std::string> place_map;

    // Per-leaf marking for a marking of the generated net.
    [[nodiscard]] leaf_markings localize(const std::vector<std::string>& generated_places) const;
    [[nodiscard]] reachability_problem problem(const std::vector<std::string>& initial,
                                               const std::vector<std::string>& final) const;
};

[[nodiscard]] family_decomposition decomp_family(const family_spec& s);
[[nodiscard]] std::size_t expected_width(const family_spec& s);

enum class component_id { R, I, bot, up, down, Ldelta, Ndelta, Llambda, Nlambda, S, P };

[[nodiscard]] net component(component_id id);
[[nodiscard]] std::string component_name(component_id id);
[[nodiscard]] std::vector<component_id> all_components();

// Grid column leaves for G_n: 0->n, n->n, n->0, and 0->0 when n = 1.
enum class column_role { first, middle, last, single };
[[nodiscard]] net grid_column(std::size_t n, column_role role);

// The pure split example with places 0,1 | 2,3 and a non pure one.
[[nodiscard]] net fig6a_net();
[[nodiscard]] net fig6a_left();
[[nodiscard]] net fig6a_right();
[[nodiscard]] net fig6b_left();
[[nodiscard]] net fig6b_right();

// Resolves "R", "Ndelta", "gmid(3)", "tdelta(2,2)", "fig6a_left", ...
[[nodiscard]] net named_net(std::string_view spec);

} // namespace nwb
