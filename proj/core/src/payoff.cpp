#include "slm/payoff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "slm/errors.hpp"
#include "slm/math.hpp"

namespace slm {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double_at(std::string_view text, std::size_t& pos) {
    double v = 0.0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{}) throw ParseError("expected a number", pos);
    pos += static_cast<std::size_t>(ptr - begin);
    return v;
}

}  // namespace

PayoffSpec PayoffSpec::identity() {
    PayoffSpec g;
    g.kind_ = Kind::Identity;
    g.growth_ = classify_growth(g);
    return g;
}

PayoffSpec PayoffSpec::call(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw std::invalid_argument("call: strike must be positive and finite");
    PayoffSpec g;
    g.kind_ = Kind::Call;
    g.strike_ = strike;
    g.growth_ = classify_growth(g);
    return g;
}

PayoffSpec PayoffSpec::put(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw std::invalid_argument("put: strike must be positive and finite");
    PayoffSpec g;
    g.kind_ = Kind::Put;
    g.strike_ = strike;
    g.growth_ = classify_growth(g);
    return g;
}

PayoffSpec PayoffSpec::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("const: value must be nonnegative and finite");
    PayoffSpec g;
    g.kind_ = Kind::Constant;
    g.constant_ = c;
    g.growth_ = classify_growth(g);
    return g;
}

PayoffSpec PayoffSpec::expression(Expression expr) {
    if (!expr.valid()) throw std::invalid_argument("payoff expression: empty");
    PayoffSpec g;
    g.kind_ = Kind::Expression;
    g.expr_ = std::move(expr);
    g.growth_ = classify_growth(g);
    return g;
}

double PayoffSpec::operator()(double x) const {
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Call: return std::max(x - strike_, 0.0);
        case Kind::Put: return std::max(strike_ - x, 0.0);
        case Kind::Constant: return constant_;
        case Kind::Expression: return expr_(x);
    }
    return 0.0;
}

std::string PayoffSpec::spec_string() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Call: return "call:K=" + format_double(strike_);
        case Kind::Put: return "put:K=" + format_double(strike_);
        case Kind::Constant: return "const:" + format_double(constant_);
        case Kind::Expression: return expr_.str();
    }
    return {};
}

GrowthClass classify_growth(const PayoffSpec& payoff, const ProbeGrid& probe) {
    GrowthClass g;
    switch (payoff.kind()) {
        case PayoffSpec::Kind::Identity:
        case PayoffSpec::Kind::Call:
            // x <= 1+x and (x-K)+ <= x <= 1+x for K > 0.
            g.kind = GrowthKind::AtMostLinear;
            g.linear_bound = 1.0;
            return g;
        case PayoffSpec::Kind::Put:
        case PayoffSpec::Kind::Constant:
            // Bounded payoffs: g(x)/x -> 0.
            g.kind = GrowthKind::StrictlySublinear;
            g.tail_slope = -1.0;
            return g;
        case PayoffSpec::Kind::Expression:
            break;
    }

    // Numeric tail fit for expressions: slope of log(g/x) vs log(x) on the
    // upper part of the probe grid.
    std::vector<double> lx, lr;
    double bound = 0.0;
    for (double x : probe.points) {
        if (!(x > 0.0)) continue;
        const double v = payoff(x);
        if (!std::isfinite(v)) throw DomainError("payoff non-finite at x=" + format_double(x));
        bound = std::max(bound, v / (1.0 + x));
        if (x >= 10.0 && v > 0.0) {
            lx.push_back(std::log(x));
            lr.push_back(std::log(v / x));
        }
    }
    g.fitted = true;
    g.linear_bound = bound;
    if (lx.size() < 3) {
        // Vanishing tail (g == 0 on the upper grid): trivially sublinear.
        g.kind = GrowthKind::StrictlySublinear;
        g.tail_slope = -1.0;
        return g;
    }
    // Fit on the last decades only; low-x behavior is irrelevant for growth.
    const std::size_t keep = std::max<std::size_t>(lx.size() / 2, 3);
    const std::size_t from = lx.size() - keep;
    const LinearFit fit = fit_line({lx.data() + from, keep}, {lr.data() + from, keep});
    g.tail_slope = fit.slope;
    if (fit.slope > 0.05) g.kind = GrowthKind::Superlinear;
    else if (fit.slope < -0.05) g.kind = GrowthKind::StrictlySublinear;
    else g.kind = GrowthKind::AtMostLinear;
    return g;
}

PayoffSpec parse_payoff(std::string_view spec, const ProbeGrid& probe) {
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front())))
        spec.remove_prefix(1);
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back())))
        spec.remove_suffix(1);
    if (spec.empty()) throw ParseError("empty payoff spec", 0);

    PayoffSpec payoff = [&] {
        if (spec == "identity") return PayoffSpec::identity();
        if (spec.rfind("call:K=", 0) == 0) {
            std::size_t pos = 7;
            const double k = parse_double_at(spec, pos);
            if (pos != spec.size()) throw ParseError("trailing input after strike", pos);
            return PayoffSpec::call(k);
        }
        if (spec.rfind("put:K=", 0) == 0) {
            std::size_t pos = 6;
            const double k = parse_double_at(spec, pos);
            if (pos != spec.size()) throw ParseError("trailing input after strike", pos);
            return PayoffSpec::put(k);
        }
        if (spec.rfind("const:", 0) == 0) {
            std::size_t pos = 6;
            const double c = parse_double_at(spec, pos);
            if (pos != spec.size()) throw ParseError("trailing input after constant", pos);
            return PayoffSpec::constant(c);
        }
        return PayoffSpec::expression(Expression::parse(spec));
    }();

    // Terminal data must be nonnegative on [0, inf).
    const double at_zero = payoff(0.0);
    if (!std::isfinite(at_zero) || at_zero < 0.0)
        throw DomainError("payoff negative or non-finite at x=0");
    for (double x : probe.points) {
        if (!(x > 0.0)) continue;
        const double v = payoff(x);
        if (!std::isfinite(v)) throw DomainError("payoff non-finite at x=" + format_double(x));
        if (v < 0.0) throw DomainError("payoff negative at x=" + format_double(x));
    }
    return payoff;
}

}  // namespace slm
