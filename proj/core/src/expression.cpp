#include "slm/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

#include "slm/errors.hpp"

namespace slm {

enum class Op {
    Num, Var,
    Add, Sub, Mul, Div, Pow,
    Neg,
    Sqrt, Exp, Log, Abs,
    Min, Max,
};

struct Expression::Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("syntax error: " + what, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (consume('+')) lhs = make_node(Op::Add, lhs, term());
            else if (consume('-')) lhs = make_node(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (consume('*')) lhs = make_node(Op::Mul, lhs, factor());
            else if (consume('/')) lhs = make_node(Op::Div, lhs, factor());
            else return lhs;
        }
    }

    // Unary sign binds looser than '^': -x^2 parses as -(x^2).
    NodePtr factor() {
        if (consume('-')) return make_node(Op::Neg, factor());
        if (consume('+')) return factor();
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (consume('^')) return make_node(Op::Pow, base, factor());
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_node(Op::Num, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "x") return make_node(Op::Var);

        struct Fn { const char* name; Op op; int arity; };
        static constexpr std::array<Fn, 6> fns{{
            {"sqrt", Op::Sqrt, 1}, {"exp", Op::Exp, 1}, {"log", Op::Log, 1},
            {"abs", Op::Abs, 1}, {"min", Op::Min, 2}, {"max", Op::Max, 2},
        }};
        for (const auto& fn : fns) {
            if (name == fn.name) {
                if (!consume('(')) fail(std::string("expected '(' after ") + fn.name);
                NodePtr a = expr();
                NodePtr b;
                if (fn.arity == 2) {
                    if (!consume(',')) fail(std::string(fn.name) + " takes two arguments");
                    b = expr();
                }
                if (!consume(')')) fail("expected ')'");
                return make_node(fn.op, a, b);
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }
};

double eval_node(const Expression::Node& n, double x) {
    switch (n.op) {
        case Op::Num: return n.value;
        case Op::Var: return x;
        case Op::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
        case Op::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
        case Op::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
        case Op::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
        case Op::Pow: return std::pow(eval_node(*n.a, x), eval_node(*n.b, x));
        case Op::Neg: return -eval_node(*n.a, x);
        case Op::Sqrt: return std::sqrt(eval_node(*n.a, x));
        case Op::Exp: return std::exp(eval_node(*n.a, x));
        case Op::Log: return std::log(eval_node(*n.a, x));
        case Op::Abs: return std::abs(eval_node(*n.a, x));
        case Op::Min: return std::min(eval_node(*n.a, x), eval_node(*n.b, x));
        case Op::Max: return std::max(eval_node(*n.a, x), eval_node(*n.b, x));
    }
    return std::nan("");
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void print_node(const Expression::Node& n, std::string& out) {
    const auto binary = [&](const char* op) {
        out += '(';
        print_node(*n.a, out);
        out += op;
        print_node(*n.b, out);
        out += ')';
    };
    const auto call = [&](const char* name) {
        out += name;
        out += '(';
        print_node(*n.a, out);
        if (n.b) {
            out += ',';
            print_node(*n.b, out);
        }
        out += ')';
    };
    switch (n.op) {
        case Op::Num: out += format_number(n.value); return;
        case Op::Var: out += 'x'; return;
        case Op::Add: binary("+"); return;
        case Op::Sub: binary("-"); return;
        case Op::Mul: binary("*"); return;
        case Op::Div: binary("/"); return;
        case Op::Pow: binary("^"); return;
        case Op::Neg:
            out += "(-";
            print_node(*n.a, out);
            out += ')';
            return;
        case Op::Sqrt: call("sqrt"); return;
        case Op::Exp: call("exp"); return;
        case Op::Log: call("log"); return;
        case Op::Abs: call("abs"); return;
        case Op::Min: call("min"); return;
        case Op::Max: call("max"); return;
    }
}

// Bottom-up match of alpha * x^p shapes.
std::optional<std::pair<double, double>> match_power_law(const Expression::Node& n) {
    using Match = std::optional<std::pair<double, double>>;
    switch (n.op) {
        case Op::Num: return Match({n.value, 0.0});
        case Op::Var: return Match({1.0, 1.0});
        case Op::Neg: {
            auto m = match_power_law(*n.a);
            if (!m) return std::nullopt;
            return Match({-m->first, m->second});
        }
        case Op::Sqrt: {
            auto m = match_power_law(*n.a);
            if (!m || !(m->first > 0)) return std::nullopt;
            return Match({std::sqrt(m->first), 0.5 * m->second});
        }
        case Op::Mul: {
            auto ma = match_power_law(*n.a);
            auto mb = match_power_law(*n.b);
            if (!ma || !mb) return std::nullopt;
            return Match({ma->first * mb->first, ma->second + mb->second});
        }
        case Op::Div: {
            auto ma = match_power_law(*n.a);
            auto mb = match_power_law(*n.b);
            if (!ma || !mb || mb->first == 0.0) return std::nullopt;
            return Match({ma->first / mb->first, ma->second - mb->second});
        }
        case Op::Pow: {
            if (n.b->op != Op::Num) return std::nullopt;
            auto ma = match_power_law(*n.a);
            if (!ma) return std::nullopt;
            const double q = n.b->value;
            // Negative coefficients under a general exponent do not stay power laws.
            if (!(ma->first > 0)) return std::nullopt;
            return Match({std::pow(ma->first, q), ma->second * q});
        }
        default: return std::nullopt;
    }
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    Parser p(text);
    return Expression(p.run());
}

double Expression::operator()(double x) const {
    return eval_node(*root_, x);
}

std::string Expression::str() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

std::optional<std::pair<double, double>> Expression::as_power_law() const {
    if (!root_) return std::nullopt;
    auto m = match_power_law(*root_);
    if (!m || !std::isfinite(m->first) || !std::isfinite(m->second)) return std::nullopt;
    return m;
}

}  // namespace slm
