#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slm/expression.hpp"
#include "slm/probe.hpp"

namespace slm {

struct CevParams {
    double alpha = 1.0;  // > 0
    double p = 1.0;      // any real exponent
};

// A volatility function sigma on the real line with the convention
// sigma(x) = 0 for every x <= 0. Immutable after construction.
class VolatilityModel {
public:
    enum class Kind { Cev, Expression, TableInterpolant };

    static VolatilityModel cev(double alpha, double p);
    static VolatilityModel expression(Expression expr);
    // Strictly increasing positive abscissae with positive values; log-log
    // linear interpolation inside, power-law continuation of the boundary
    // segments outside.
    static VolatilityModel table(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const {
        if (!(x > 0.0)) return 0.0;
        switch (kind_) {
            case Kind::Cev:
                if (cev_.p == 1.0) return cev_.alpha * x;
                if (cev_.p == 2.0) return cev_.alpha * x * x;
                if (cev_.p == 0.5) return cev_.alpha * std::sqrt(x);
                if (cev_.p == 0.0) return cev_.alpha;
                return cev_.alpha * std::pow(x, cev_.p);
            case Kind::Expression:
                return expr_(x);
            case Kind::TableInterpolant:
                return table_eval(x);
        }
        return 0.0;
    }

    Kind kind() const { return kind_; }

    // Set iff kind() == Kind::Cev (including expressions recognized as CEV).
    std::optional<CevParams> cev_params() const {
        if (kind_ == Kind::Cev) return cev_;
        return std::nullopt;
    }

    bool is_cev(double alpha, double p) const {
        return kind_ == Kind::Cev && cev_.alpha == alpha && cev_.p == p;
    }

    // Parseable textual form (round-trips through parse_volatility).
    std::string spec_string() const;

private:
    VolatilityModel() = default;
    double table_eval(double x) const;

    Kind kind_ = Kind::Cev;
    CevParams cev_;
    Expression expr_;
    std::vector<double> log_xs_, log_ys_;
    std::string source_;
};

// Accepts "cev:alpha=<a>,p=<p>" (alpha optional, default 1),
// "table:<x1>=<y1>,<x2>=<y2>,..." or an arithmetic expression in x.
// Expressions matching alpha*x^p structurally are promoted to CEV models so
// the condition classifier can work symbolically. Throws ParseError on bad
// syntax and DomainError when sigma is nonpositive or non-finite anywhere on
// the validation probe grid.
VolatilityModel parse_volatility(std::string_view spec,
                                 const ProbeGrid& probe = default_probe_grid());

}  // namespace slm
