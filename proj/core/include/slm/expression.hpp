#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace slm {

// One-variable arithmetic expressions over x with + - * / ^, numeric literals
// and the functions sqrt, exp, log, min, max, abs. Immutable value type;
// copies share the tree and evaluation is pure, so concurrent reads are safe.
class Expression {
public:
    // Throws ParseError (position-annotated) on malformed input.
    static Expression parse(std::string_view text);

    double operator()(double x) const;

    // Parseable textual form; parse(str()) evaluates identically.
    std::string str() const;

    // Structural match against alpha * x^p (e.g. "x", "2*x^1.5", "sqrt(x)",
    // "x*x"). Returns {alpha, p} or nullopt when the tree has another shape.
    std::optional<std::pair<double, double>> as_power_law() const;

    bool valid() const { return root_ != nullptr; }

    Expression() = default;

    struct Node;  // opaque; defined in expression.cpp

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

}  // namespace slm
