#include "nwb/wiring.hpp"

#include <cctype>
#include <functional>
#include <unordered_map>

namespace nwb {

struct wiring_expr::node {
    op kind;
    std::string name;
    wiring_expr lhs{nullptr};
    wiring_expr rhs{nullptr};
};

wiring_expr wiring_expr::var(std::string name)
{
    return wiring_expr(std::make_shared<const node>(node{op::var, std::move(name)}));
}

wiring_expr wiring_expr::seq(wiring_expr l, wiring_expr r)
{
    return wiring_expr(std::make_shared<const node>(node{op::seq, {}, std::move(l), std::move(r)}));
}

wiring_expr wiring_expr::tensor(wiring_expr l, wiring_expr r)
{
    return wiring_expr(std::make_shared<const node>(node{op::tensor, {}, std::move(l), std::move(r)}));
}

wiring_expr::op wiring_expr::kind() const { return node_->kind; }
const std::string& wiring_expr::name() const { return node_->name; }
const wiring_expr& wiring_expr::lhs() const { return node_->lhs; }
const wiring_expr& wiring_expr::rhs() const { return node_->rhs; }

namespace {

template <typename T, typename F>
T fold_shared(const wiring_expr& e, std::unordered_map<const void*, T>& memo, F&& f)
{
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    T v = f(e);
    memo.emplace(e.id(), v);
    return v;
}

int precedence(const wiring_expr& e)
{
    switch (e.kind()) {
    case wiring_expr::op::seq: return 1;
    case wiring_expr::op::tensor: return 2;
    default: return 3;
    }
}

void print(const wiring_expr& e, std::string& out)
{
    if (e.is_var()) {
        out += e.name();
        return;
    }
    const int p = precedence(e);
    auto side = [&](const wiring_expr& c, bool right) {
        bool parens = precedence(c) < p || (right && precedence(c) == p);
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };
    side(e.lhs(), false);
    out += e.kind() == wiring_expr::op::seq ? " ; " : " * ";
    side(e.rhs(), true);
}

std::string brief(const wiring_expr& e)
{
    auto s = e.to_string();
    if (s.size() > 120) s = s.substr(0, 117) + "...";
    return s;
}

class parser {
public:
    explicit parser(std::string_view text) : s_(text) {}

    wiring_expr parse()
    {
        auto e = seq_level();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(pos_, msg); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok)
    {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    wiring_expr seq_level()
    {
        auto e = tensor_level();
        while (accept(";")) e = wiring_expr::seq(e, tensor_level());
        return e;
    }

    wiring_expr tensor_level()
    {
        auto e = power_level();
        while (accept("*") || accept("\xE2\x8A\x97")) e = wiring_expr::tensor(e, power_level());
        return e;
    }

    wiring_expr power_level()
    {
        auto e = atom();
        while (accept("^")) {
            skip();
            auto start = pos_;
            std::size_t k = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = k * 10 + static_cast<std::size_t>(s_[pos_] - '0');
                if (k > 1000000) fail("exponent too large");
                ++pos_;
            }
            if (pos_ == start) fail("expected exponent");
            if (k == 0) {
                pos_ = start;
                fail("exponent must be at least 1");
            }
            e = power(e, k);
        }
        return e;
    }

    wiring_expr atom()
    {
        skip();
        if (accept("(")) {
            auto e = seq_level();
            if (!accept(")")) fail("expected ')'");
            return e;
        }
        auto start = pos_;
        auto ident_char = [&](char c, bool first) {
            return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                   (!first && (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '\''));
        };
        if (pos_ < s_.size() && ident_char(s_[pos_], true)) {
            while (pos_ < s_.size() && ident_char(s_[pos_], false)) ++pos_;
            return wiring_expr::var(std::string(s_.substr(start, pos_ - start)));
        }
        fail(pos_ == s_.size() ? "unexpected end of expression" : "expected variable or '('");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void collect_leaves(const wiring_expr& e, const std::string& path, std::vector<leaf_occurrence>& out)
{
    if (e.is_var()) {
        out.push_back({path, e.name()});
        return;
    }
    collect_leaves(e.lhs(), path.empty() ? "L" : path + "/L", out);
    collect_leaves(e.rhs(), path.empty() ? "R" : path + "/R", out);
}

void flatten(const wiring_expr& e, wiring_expr::op kind, std::vector<wiring_expr>& out)
{
    if (e.kind() == kind) {
        flatten(e.lhs(), kind, out);
        flatten(e.rhs(), kind, out);
    } else {
        out.push_back(e);
    }
}

wiring_expr combine(wiring_expr::op kind, wiring_expr l, wiring_expr r)
{
    return kind == wiring_expr::op::seq ? wiring_expr::seq(std::move(l), std::move(r))
                                        : wiring_expr::tensor(std::move(l), std::move(r));
}

wiring_expr build(wiring_expr::op kind, const std::vector<wiring_expr>& xs, std::size_t lo, std::size_t hi,
                  assoc_policy policy)
{
    if (hi - lo == 1) return xs[lo];
    switch (policy) {
    case assoc_policy::left: return combine(kind, build(kind, xs, lo, hi - 1, policy), xs[hi - 1]);
    case assoc_policy::right: return combine(kind, xs[lo], build(kind, xs, lo + 1, hi, policy));
    default: {
        auto mid = lo + (hi - lo) / 2;
        return combine(kind, build(kind, xs, lo, mid, policy), build(kind, xs, mid, hi, policy));
    }
    }
}

wiring_expr reassoc(const wiring_expr& e, assoc_policy policy, std::unordered_map<const void*, wiring_expr>& memo)
{
    if (e.is_var()) return e;
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    std::vector<wiring_expr> parts;
    flatten(e, e.kind(), parts);
    for (auto& p : parts) p = reassoc(p, policy, memo);
    auto out = build(e.kind(), parts, 0, parts.size(), policy);
    memo.emplace(e.id(), out);
    return out;
}

} // namespace

std::size_t wiring_expr::node_count() const
{
    std::unordered_map<const void*, std::size_t> memo;
    std::function<std::size_t(const wiring_expr&)> f = [&](const wiring_expr& e) -> std::size_t {
        if (e.is_var()) return 1;
        return fold_shared<std::size_t>(e, memo, [&](const wiring_expr& x) { return 1 + f(x.lhs()) + f(x.rhs()); });
    };
    return f(*this);
}

std::size_t wiring_expr::leaf_count() const
{
    std::unordered_map<const void*, std::size_t> memo;
    std::function<std::size_t(const wiring_expr&)> f = [&](const wiring_expr& e) -> std::size_t {
        if (e.is_var()) return 1;
        return fold_shared<std::size_t>(e, memo, [&](const wiring_expr& x) { return f(x.lhs()) + f(x.rhs()); });
    };
    return f(*this);
}

std::string wiring_expr::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const wiring_expr& a, const wiring_expr& b)
{
    if (a.id() == b.id()) return true;
    if (a.kind() != b.kind()) return false;
    if (a.is_var()) return a.name() == b.name();
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

wiring_expr parse_expr(std::string_view text)
{
    return parser(text).parse();
}

wiring_expr power(const wiring_expr& e, std::size_t k)
{
    if (k == 0) throw invalid_argument("exponent must be at least 1");
    auto out = e;
    for (std::size_t i = 1; i < k; ++i) out = wiring_expr::seq(out, e);
    return out;
}

boundaries type_of(const wiring_expr& e, const variable_assignment& env)
{
    std::unordered_map<const void*, boundaries> memo;
    std::function<boundaries(const wiring_expr&)> f = [&](const wiring_expr& x) -> boundaries {
        if (x.is_var()) {
            auto it = env.find(x.name());
            if (it == env.end()) throw unknown_name("unbound variable '" + x.name() + "'");
            return {it->second.left, it->second.right};
        }
        return fold_shared<boundaries>(x, memo, [&](const wiring_expr& y) -> boundaries {
            auto l = f(y.lhs());
            auto r = f(y.rhs());
            if (y.kind() == wiring_expr::op::tensor) return {l.left + r.left, l.right + r.right};
            if (l.right != r.left)
                throw boundary_mismatch("in subterm '" + brief(y) + "': left operand has right boundary " +
                                        std::to_string(l.right) + " but right operand has left boundary " +
                                        std::to_string(r.left));
            return {l.left, r.right};
        });
    };
    return f(e);
}

net eval_net(const wiring_expr& e, const variable_assignment& env, const seq_options& opts)
{
    (void)type_of(e, env);
    std::unordered_map<const void*, std::shared_ptr<const net>> memo;
    std::function<std::shared_ptr<const net>(const wiring_expr&)> f = [&](const wiring_expr& x) {
        if (x.is_var()) return std::make_shared<const net>(env.at(x.name()));
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        auto l = f(x.lhs());
        auto r = f(x.rhs());
        auto v = std::make_shared<const net>(x.kind() == wiring_expr::op::seq ? seq_compose(*l, *r, opts)
                                                                             : tensor(*l, *r));
        memo.emplace(x.id(), v);
        return v;
    };
    return *f(e);
}

std::size_t width(const wiring_expr& e, const variable_assignment& env)
{
    (void)type_of(e, env);
    std::unordered_map<const void*, std::pair<boundaries, std::size_t>> memo;
    std::function<std::pair<boundaries, std::size_t>(const wiring_expr&)> f = [&](const wiring_expr& x) {
        if (x.is_var()) {
            const auto& n = env.at(x.name());
            return std::pair{boundaries{n.left, n.right}, std::max({n.left, n.places.size(), n.right})};
        }
        return fold_shared<std::pair<boundaries, std::size_t>>(x, memo, [&](const wiring_expr& y) {
            auto [bl, wl] = f(y.lhs());
            auto [br, wr] = f(y.rhs());
            boundaries b = y.kind() == wiring_expr::op::seq ? boundaries{bl.left, br.right}
                                                             : boundaries{bl.left + br.left, bl.right + br.right};
            return std::pair{b, std::max({wl, wr, b.left, b.right})};
        });
    };
    return f(e).second;
}

wiring_expr reassociate(const wiring_expr& e, assoc_policy policy)
{
    std::unordered_map<const void*, wiring_expr> memo;
    return reassoc(e, policy, memo);
}

std::vector<leaf_occurrence> leaves(const wiring_expr& e)
{
    std::vector<leaf_occurrence> out;
    collect_leaves(e, "", out);
    return out;
}

wiring_expr subterm(const wiring_expr& e, std::string_view path)
{
    auto cur = e;
    std::size_t i = 0;
    while (i < path.size()) {
        auto j = path.find('/', i);
        if (j == std::string_view::npos) j = path.size();
        auto seg = path.substr(i, j - i);
        if (cur.is_var() || (seg != "L" && seg != "R"))
            throw unknown_name("no subterm at path '" + std::string(path) + "'");
        cur = seg == "L" ? cur.lhs() : cur.rhs();
        i = j + 1;
    }
    return cur;
}

std::vector<seq_split> seq_nodes(const wiring_expr& e)
{
    std::vector<seq_split> out;
    std::function<void(const wiring_expr&, const std::string&)> f = [&](const wiring_expr& x, const std::string& p) {
        if (x.is_var()) return;
        if (x.kind() == wiring_expr::op::seq) out.push_back({p, x.lhs(), x.rhs()});
        f(x.lhs(), p.empty() ? "L" : p + "/L");
        f(x.rhs(), p.empty() ? "R" : p + "/R");
    };
    f(e, "");
    return out;
}

} // namespace nwb
