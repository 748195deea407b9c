#include "slm/volatility.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "slm/errors.hpp"

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

void validate_on_probe(const VolatilityModel& model, const ProbeGrid& probe) {
    for (double x : probe.points) {
        if (!(x > 0.0)) continue;
        const double s = model(x);
        if (!std::isfinite(s))
            throw DomainError("sigma is non-finite at x=" + format_double(x));
        if (!(s > 0.0))
            throw DomainError("sigma <= 0 at x=" + format_double(x) +
                              "; sigma must be positive on (0,inf)");
    }
}

}  // namespace

VolatilityModel VolatilityModel::cev(double alpha, double p) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("cev: alpha must be positive and finite");
    if (!std::isfinite(p)) throw std::invalid_argument("cev: p must be finite");
    VolatilityModel m;
    m.kind_ = Kind::Cev;
    m.cev_ = {alpha, p};
    return m;
}

VolatilityModel VolatilityModel::expression(Expression expr) {
    if (!expr.valid()) throw std::invalid_argument("expression: empty expression");
    VolatilityModel m;
    m.kind_ = Kind::Expression;
    m.expr_ = std::move(expr);
    m.source_ = m.expr_.str();
    return m;
}

VolatilityModel VolatilityModel::table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw std::invalid_argument("table: need equally many abscissae and values");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !std::isfinite(xs[i]))
            throw std::invalid_argument("table: abscissae must be positive and finite");
        if (!(ys[i] > 0.0) || !std::isfinite(ys[i]))
            throw std::invalid_argument("table: values must be positive and finite");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("table: abscissae must be strictly increasing");
    }
    VolatilityModel m;
    m.kind_ = Kind::TableInterpolant;
    m.log_xs_.resize(xs.size());
    m.log_ys_.resize(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        m.log_xs_[i] = std::log(xs[i]);
        m.log_ys_[i] = std::log(ys[i]);
    }
    return m;
}

double VolatilityModel::table_eval(double x) const {
    const double lx = std::log(x);
    const std::size_t n = log_xs_.size();
    if (n == 1) return std::exp(log_ys_[0]);

    std::size_t hi = std::upper_bound(log_xs_.begin(), log_xs_.end(), lx) - log_xs_.begin();
    // Clamp to the boundary segments; this continues them as power laws.
    if (hi == 0) hi = 1;
    if (hi == n) hi = n - 1;
    const std::size_t lo = hi - 1;
    const double w = (lx - log_xs_[lo]) / (log_xs_[hi] - log_xs_[lo]);
    return std::exp(log_ys_[lo] + w * (log_ys_[hi] - log_ys_[lo]));
}

std::string VolatilityModel::spec_string() const {
    switch (kind_) {
        case Kind::Cev:
            return "cev:alpha=" + format_double(cev_.alpha) + ",p=" + format_double(cev_.p);
        case Kind::Expression:
            return source_;
        case Kind::TableInterpolant: {
            std::string out = "table:";
            for (std::size_t i = 0; i < log_xs_.size(); ++i) {
                if (i > 0) out += ',';
                out += format_double(std::exp(log_xs_[i]));
                out += '=';
                out += format_double(std::exp(log_ys_[i]));
            }
            return out;
        }
    }
    return {};
}

VolatilityModel parse_volatility(std::string_view spec, const ProbeGrid& probe) {
    // Trim outer whitespace; positions in errors refer to the trimmed string.
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front())))
        spec.remove_prefix(1);
    while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back())))
        spec.remove_suffix(1);
    if (spec.empty()) throw ParseError("empty volatility spec", 0);

    VolatilityModel model = [&] {
        if (spec.rfind("cev:", 0) == 0) {
            double alpha = 1.0;
            std::optional<double> p;
            std::size_t pos = 4;
            while (pos < spec.size()) {
                if (spec.compare(pos, 6, "alpha=") == 0) {
                    pos += 6;
                    alpha = parse_double_at(spec, pos);
                } else if (spec.compare(pos, 2, "p=") == 0) {
                    pos += 2;
                    p = parse_double_at(spec, pos);
                } else {
                    throw ParseError("expected alpha=<a> or p=<p>", pos);
                }
                if (pos < spec.size()) {
                    if (spec[pos] != ',') throw ParseError("expected ','", pos);
                    ++pos;
                }
            }
            if (!p) throw ParseError("cev spec requires p=<exponent>", spec.size());
            return VolatilityModel::cev(alpha, *p);
        }
        if (spec.rfind("table:", 0) == 0) {
            std::vector<double> xs, ys;
            std::size_t pos = 6;
            while (pos < spec.size()) {
                xs.push_back(parse_double_at(spec, pos));
                if (pos >= spec.size() || spec[pos] != '=')
                    throw ParseError("expected '=' in table entry", pos);
                ++pos;
                ys.push_back(parse_double_at(spec, pos));
                if (pos < spec.size()) {
                    if (spec[pos] != ',') throw ParseError("expected ','", pos);
                    ++pos;
                }
            }
            return VolatilityModel::table(std::move(xs), std::move(ys));
        }
        Expression expr = Expression::parse(spec);
        if (auto pl = expr.as_power_law(); pl && pl->first > 0.0)
            return VolatilityModel::cev(pl->first, pl->second);
        return VolatilityModel::expression(std::move(expr));
    }();

    validate_on_probe(model, probe);
    return model;
}

}  // namespace slm
