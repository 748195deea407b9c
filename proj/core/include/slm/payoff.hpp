#pragma once

#include <string>
#include <string_view>

#include "slm/expression.hpp"
#include "slm/probe.hpp"

namespace slm {

enum class GrowthKind { AtMostLinear, StrictlySublinear, Superlinear };

struct GrowthClass {
    GrowthKind kind = GrowthKind::AtMostLinear;
    // C with g(x) <= C(1+x) at all probed points; meaningful for AtMostLinear.
    double linear_bound = 1.0;
    // Fitted tail exponent of g(x)/x (0 for bounded ratio, -1 for bounded g, ...).
    double tail_slope = 0.0;
    // True when the tag came from the numeric tail fit rather than structure.
    bool fitted = false;
};

// Terminal data g >= 0 on [0, inf) with its growth classification.
class PayoffSpec {
public:
    enum class Kind { Identity, Call, Put, Constant, Expression };

    static PayoffSpec identity();
    static PayoffSpec call(double strike);
    static PayoffSpec put(double strike);
    static PayoffSpec constant(double c);
    static PayoffSpec expression(Expression expr);

    double operator()(double x) const;

    Kind kind() const { return kind_; }
    double strike() const { return strike_; }
    double constant_value() const { return constant_; }
    const GrowthClass& growth() const { return growth_; }

    std::string spec_string() const;

private:
    friend GrowthClass classify_growth(const PayoffSpec&, const ProbeGrid&);
    PayoffSpec() = default;

    Kind kind_ = Kind::Identity;
    double strike_ = 0.0;
    double constant_ = 0.0;
    Expression expr_;
    GrowthClass growth_;
};

// Tags the payoff's growth. Named kinds classify structurally; expressions are
// fitted on the probe tail: the slope s of log(g(x)/x) against log(x) decides
// (|s| <= 0.05 bounded ratio -> AtMostLinear, s < -0.05 -> StrictlySublinear,
// s > 0.05 -> Superlinear). The fitted slope is reported either way.
GrowthClass classify_growth(const PayoffSpec& payoff,
                            const ProbeGrid& probe = default_probe_grid());

// Accepts "identity", "call:K=<k>", "put:K=<k>", "const:<c>" or an arithmetic
// expression in x. Throws ParseError on bad syntax and DomainError when the
// payoff is negative at a probe point. The growth tag is attached on parse.
PayoffSpec parse_payoff(std::string_view spec,
                        const ProbeGrid& probe = default_probe_grid());

}  // namespace slm
