#include "slm/assumptions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "slm/errors.hpp"
#include "slm/math.hpp"
#include "slm/quadrature.hpp"

namespace slm {

namespace {

constexpr double kIntegralCap = 1e12;  // beyond this, treat sigma^-2 as non-integrable

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

// Local Hoelder exponent at x from |sigma(x+h) - sigma(x)| over shrinking h.
// Returns NaN when the differences are all below the noise floor (flat sigma
// is smooth, not rough, so callers skip NaNs).
double interior_exponent(const VolatilityModel& sigma, double x) {
    const double sx = sigma(x);
    std::vector<double> lh, ld;
    for (int k = 1; k <= 8; ++k) {
        const double h = x * std::pow(0.5, k + 1);  // h in [x/512, x/4]
        const double d = std::abs(sigma(x + h) - sx);
        if (d > 1e-13 * std::max(1.0, std::abs(sx))) {
            lh.push_back(std::log(h));
            ld.push_back(std::log(d));
        }
    }
    if (lh.size() < 3) return std::nan("");
    return fit_line(lh, ld).slope;
}

}  // namespace

AssumptionReport validate_assumptions(const VolatilityModel& model, const ProbeGrid& probe) {
    AssumptionReport report;

    std::vector<double> xs;
    for (double x : probe.points)
        if (x > 0.0) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    if (xs.empty()) throw std::invalid_argument("validate_assumptions: empty probe grid");

    // Positivity on (0, inf). Non-finite sigma is the one hard failure.
    report.positivity_ok = true;
    for (double x : xs) {
        const double s = model(x);
        if (!std::isfinite(s)) throw DomainError("sigma non-finite at x=" + fmt(x));
        if (!(s > 0.0)) {
            report.positivity_ok = false;
            if (report.notes.empty()) report.notes = "sigma <= 0 at x=" + fmt(x);
        }
    }

    // Local integrability of sigma^-2 on each probe interval.
    report.local_integrability_ok = true;
    const auto inv_sq = [&](double x) {
        const double s = model(x);
        return 1.0 / (s * s);
    };
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        IntervalIntegral cell;
        cell.lo = xs[i];
        cell.hi = xs[i + 1];
        const QuadratureResult q = integrate_adaptive(inv_sq, cell.lo, cell.hi, 1e-6, 0.0, 2000);
        cell.finite = q.ok() && q.value < kIntegralCap;
        cell.value = q.finite ? q.value : std::numeric_limits<double>::infinity();
        if (!cell.finite) {
            report.local_integrability_ok = false;
            if (report.notes.empty())
                report.notes = "sigma^-2 not integrable on [" + fmt(cell.lo) + "," + fmt(cell.hi) + "]";
        }
        report.sigma_m2_integrals.push_back(cell);
    }

    // Hoelder exponent: interior regressions plus the behavior toward 0, which
    // is where CEV-type cusps live. Estimated from |sigma(x) - sigma(x/2)| on
    // the lowest probe decade.
    double min_exp = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const double e = interior_exponent(model, x);
        if (std::isfinite(e)) min_exp = std::min(min_exp, e);
    }
    {
        std::vector<double> lx, ld;
        const double x_cut = xs.front() * 10.0;
        for (double x : xs) {
            if (x > x_cut) break;
            const double d = std::abs(model(x) - model(0.5 * x));
            if (d > 0.0 && std::isfinite(d)) {
                lx.push_back(std::log(x));
                ld.push_back(std::log(d));
            }
        }
        if (lx.size() >= 3) min_exp = std::min(min_exp, fit_line(lx, ld).slope);
    }
    if (!std::isfinite(min_exp)) min_exp = 1.0;  // no measurable roughness anywhere
    report.holder_exponent = std::min(min_exp, 1.0);
    report.holder_half_ok = report.holder_exponent >= 0.45;
    if (!report.holder_half_ok) {
        if (!report.notes.empty()) report.notes += "; ";
        report.notes += "estimated Hoelder exponent " + fmt(report.holder_exponent) +
                        " below 1/2 (advisory)";
    }
    return report;
}

}  // namespace slm
