#pragma once

#include "nwb/algebra.hpp"
#include "nwb/net.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nwb {

// Immutable binary tree over variables. Copies share structure.
class wiring_expr {
public:
    enum class op { var, seq, tensor };

    static wiring_expr var(std::string name);
    static wiring_expr seq(wiring_expr l, wiring_expr r);
    static wiring_expr tensor(wiring_expr l, wiring_expr r);

    [[nodiscard]] op kind() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const wiring_expr& lhs() const;
    [[nodiscard]] const wiring_expr& rhs() const;
    [[nodiscard]] bool is_var() const { return kind() == op::var; }

    // Identity of the shared node, used to reuse work across repeated subtrees.
    [[nodiscard]] const void* id() const { return node_.get(); }

    [[nodiscard]] std::size_t node_count() const;
    [[nodiscard]] std::size_t leaf_count() const;

    // Minimal parentheses; parse_expr(to_string()) == *this.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const wiring_expr& a, const wiring_expr& b);

private:
    struct node;
    explicit wiring_expr(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    std::shared_ptr<const node> node_;
};

// Grammar: x | e ; e | e * e | (e) | e^k. Precedence ^ over * over ;, both
// binary operators left associative. Identifiers: [A-Za-z_][A-Za-z0-9_.']*.
[[nodiscard]] wiring_expr parse_expr(std::string_view text);

// k-fold left associated sequential composition.
[[nodiscard]] wiring_expr power(const wiring_expr& e, std::size_t k);

using variable_assignment = std::map<std::string, net>;

struct boundaries {
    std::size_t left = 0;
    std::size_t right = 0;
};

// Throws unknown_name or boundary_mismatch naming the offending subterm.
[[nodiscard]] boundaries type_of(const wiring_expr& e, const variable_assignment& env);
[[nodiscard]] net eval_net(const wiring_expr& e, const variable_assignment& env, const seq_options& opts = {});
[[nodiscard]] std::size_t width(const wiring_expr& e, const variable_assignment& env);

enum class assoc_policy { left, right, balanced };
[[nodiscard]] wiring_expr reassociate(const wiring_expr& e, assoc_policy policy);

// Leaf occurrences in left-to-right order; the path of the root leaf is "",
// otherwise segments "L" and "R" joined by '/'.
struct leaf_occurrence {
    std::string path;
    std::string var;
};
[[nodiscard]] std::vector<leaf_occurrence> leaves(const wiring_expr& e);

// Subterm at a path such as "R/L".
[[nodiscard]] wiring_expr subterm(const wiring_expr& e, std::string_view path);

// Every sequential node as (path, left operand, right operand).
struct seq_split {
    std::string path;
    wiring_expr left;
    wiring_expr right;
};
[[nodiscard]] std::vector<seq_split> seq_nodes(const wiring_expr& e);

} // namespace nwb
