#include "slm/condition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slm/errors.hpp"
#include "slm/math.hpp"
#include "slm/quadrature.hpp"

namespace slm {

namespace {

// int_1^B x^(1-2p) dx / alpha^2
double cev_partial_integral(double alpha, double p, double B) {
    const double a2 = alpha * alpha;
    if (p == 1.0) return std::log(B) / a2;
    const double e = 2.0 - 2.0 * p;
    return (std::pow(B, e) - 1.0) / (e * a2);
}

double cev_psi(double alpha, double p, double x) {
    if (x <= 1.0) return x;
    const double a2 = alpha * alpha;
    // A = int_1^x u^(1-2p) du, B = int_1^x u^(2-2p) du
    const double A = p == 1.0 ? std::log(x) : (std::pow(x, 2.0 - 2.0 * p) - 1.0) / (2.0 - 2.0 * p);
    const double B = p == 1.5 ? std::log(x) : (std::pow(x, 3.0 - 2.0 * p) - 1.0) / (3.0 - 2.0 * p);
    return x + (x * A - B) / a2;
}

double checked_integral(const auto& integrand, double lo, double hi, double rel_tol,
                        const char* what) {
    const QuadratureResult q = integrate_adaptive(integrand, lo, hi, rel_tol);
    if (!q.finite)
        throw DomainError(std::string(what) + ": integrand non-finite inside [" +
                          std::to_string(lo) + "," + std::to_string(hi) +
                          "] (sigma vanishing?)");
    if (!q.converged)
        throw DomainError(std::string(what) + ": quadrature failed to converge on [" +
                          std::to_string(lo) + "," + std::to_string(hi) + "]");
    return q.value;
}

}  // namespace

double ds_partial_integral(const VolatilityModel& model, double B, double rel_tol) {
    if (!(B > 1.0)) throw std::invalid_argument("ds_partial_integral: need B > 1");
    const auto f = [&](double x) {
        const double s = model(x);
        return x / (s * s);
    };
    return checked_integral(f, 1.0, B, rel_tol, "ds_partial_integral");
}

ConditionReport classify_martingale(const VolatilityModel& model, const ConditionOptions& options) {
    ConditionReport report;

    if (options.allow_symbolic && model.cev_params()) {
        const auto [alpha, p] = *model.cev_params();
        report.method = ConditionMethod::SymbolicCev;
        report.tail_exponent = 2.0 * p - 1.0;
        report.tail_exponent_band = 0.0;
        for (double B : options.partial_limits)
            report.partial_integrals.emplace_back(B, cev_partial_integral(alpha, p, B));
        if (p <= 1.0) {
            report.verdict = MartingaleVerdict::Martingale;
        } else {
            report.verdict = MartingaleVerdict::StrictLocalMartingale;
            report.limit_value = 1.0 / (alpha * alpha * (2.0 * p - 2.0));
        }
        return report;
    }

    report.method = ConditionMethod::NumericTailFit;
    const auto f = [&](double x) {
        const double s = model(x);
        return x / (s * s);
    };

    // Cumulative partial integrals at the requested upper limits.
    double acc = 0.0, prev = 1.0;
    std::vector<double> limits = options.partial_limits;
    std::sort(limits.begin(), limits.end());
    for (double B : limits) {
        if (!(B > prev)) continue;
        acc += checked_integral(f, prev, B, options.quad_rel_tol, "classify_martingale");
        report.partial_integrals.emplace_back(B, acc);
        prev = B;
    }
    const double B_max = prev;

    // Tail exponent from a log-log fit of the integrand over the last three
    // decades. A drift between the window halves signals the tail is not yet
    // a clean power law; it widens the band and corrects the point estimate
    // by one extrapolation step.
    const double window_lo = std::max(1.0, B_max / 1e3);
    constexpr int n_fit = 48;
    std::vector<double> lx(n_fit), lf(n_fit);
    const double lstep = std::log(B_max / window_lo) / (n_fit - 1);
    for (int i = 0; i < n_fit; ++i) {
        const double x = window_lo * std::exp(lstep * i);
        const double v = f(x);
        if (!std::isfinite(v) || !(v > 0.0))
            throw DomainError("classify_martingale: integrand not positive/finite at x=" +
                              std::to_string(x));
        lx[i] = std::log(x);
        lf[i] = std::log(v);
    }
    const LinearFit full = fit_line(lx, lf);
    const int half = n_fit / 2;
    const LinearFit lo_fit = fit_line({lx.data(), static_cast<std::size_t>(half)},
                                      {lf.data(), static_cast<std::size_t>(half)});
    const LinearFit hi_fit = fit_line({lx.data() + half, static_cast<std::size_t>(n_fit - half)},
                                      {lf.data() + half, static_cast<std::size_t>(n_fit - half)});

    const double beta_lo = -lo_fit.slope;
    const double beta_hi = -hi_fit.slope;
    const double drift = beta_hi - beta_lo;
    const double beta = beta_hi + drift;
    report.tail_exponent = beta;
    report.tail_exponent_band = std::max(2.0 * full.slope_stderr, std::abs(drift));

    const double eps = options.epsilon_margin;
    if (report.tail_exponent_band > 0.5) {
        report.verdict = MartingaleVerdict::Inconclusive;
    } else if (beta <= 1.0 - eps) {
        report.verdict = MartingaleVerdict::Martingale;
    } else if (beta >= 1.0 + eps) {
        report.verdict = MartingaleVerdict::StrictLocalMartingale;
        // Remaining tail from the fitted power law: c*B^(1-beta)/(beta-1).
        const double f_at_end = std::exp(full.intercept + full.slope * std::log(B_max));
        report.limit_value = acc + f_at_end * B_max / (beta - 1.0);
    } else {
        report.verdict = MartingaleVerdict::Inconclusive;
    }
    return report;
}

double psi(const VolatilityModel& model, double x, double rel_tol) {
    if (!(x >= 0.0)) throw std::invalid_argument("psi: need x >= 0");
    if (x <= 1.0) return x;
    if (model.cev_params()) {
        const auto [alpha, p] = *model.cev_params();
        return cev_psi(alpha, p, x);
    }
    // psi(x) = x + x*I1(x) - I2(x) with I1 = int u/sigma^2, I2 = int u^2/sigma^2.
    const auto f1 = [&](double u) {
        const double s = model(u);
        return u / (s * s);
    };
    const auto f2 = [&](double u) {
        const double s = model(u);
        return u * u / (s * s);
    };
    const double i1 = checked_integral(f1, 1.0, x, rel_tol, "psi");
    const double i2 = checked_integral(f2, 1.0, x, rel_tol, "psi");
    return x + x * i1 - i2;
}

PsiEvaluator::PsiEvaluator(const VolatilityModel& model, double x_max) {
    if (!(x_max > 1.0)) x_max = 2.0;
    if (model.cev_params()) {
        closed_form_ = true;
        alpha_ = model.cev_params()->alpha;
        p_ = model.cev_params()->p;
        return;
    }
    // Cumulative I1/I2 on a log grid; psi is then linear-interpolated in x.
    constexpr int n = 768;
    const double span = std::log(2.0 * x_max);
    log_xs_.resize(n);
    psis_.resize(n);
    const auto f1 = [&](double u) {
        const double s = model(u);
        return u / (s * s);
    };
    const auto f2 = [&](double u) {
        const double s = model(u);
        return u * u / (s * s);
    };
    double i1 = 0.0, i2 = 0.0, prev = 1.0;
    for (int i = 0; i < n; ++i) {
        log_xs_[i] = span * i / (n - 1);
        const double x = std::exp(log_xs_[i]);
        if (x > prev) {
            i1 += checked_integral(f1, prev, x, 1e-7, "PsiEvaluator");
            i2 += checked_integral(f2, prev, x, 1e-7, "PsiEvaluator");
            prev = x;
        }
        psis_[i] = x + x * i1 - i2;
    }
}

double PsiEvaluator::operator()(double x) const {
    if (x <= 1.0) return std::max(x, 0.0);
    if (closed_form_) return cev_psi(alpha_, p_, x);
    const double lx = std::log(x);
    const auto it = std::upper_bound(log_xs_.begin(), log_xs_.end(), lx);
    std::size_t hi = it - log_xs_.begin();
    if (hi == 0) hi = 1;
    if (hi >= log_xs_.size()) hi = log_xs_.size() - 1;  // continue last segment
    const std::size_t lo = hi - 1;
    const double w = (lx - log_xs_[lo]) / (log_xs_[hi] - log_xs_[lo]);
    return psis_[lo] + w * (psis_[hi] - psis_[lo]);
}

PsiProfile psi_growth_profile(const VolatilityModel& model, std::span<const double> xs) {
    PsiProfile profile;
    if (xs.empty()) throw std::invalid_argument("psi_growth_profile: empty grid");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= 1.0)) throw std::invalid_argument("psi_growth_profile: grid must lie in [1, inf)");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("psi_growth_profile: grid must be ascending");
    }

    for (double x : xs) profile.ratios.emplace_back(x, psi(model, x) / x);

    for (std::size_t i = 0; i + 1 < profile.ratios.size(); ++i) {
        const double r0 = profile.ratios[i].second;
        const double r1 = profile.ratios[i + 1].second;
        if (r1 < r0 - 1e-9 * std::max(1.0, std::abs(r0))) profile.monotone = false;
    }

    const std::size_t m = profile.ratios.size();
    if (m < 4) return profile;  // trend Unknown: too few points to extrapolate

    // Per-log-x increments; their decay ratio separates the two regimes.
    std::vector<double> slopes;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double dlx = std::log(profile.ratios[i + 1].first / profile.ratios[i].first);
        slopes.push_back((profile.ratios[i + 1].second - profile.ratios[i].second) / dlx);
    }
    const double r_last = profile.ratios.back().second;
    const double flat_tol = 1e-10 * std::max(1.0, std::abs(r_last));
    if (std::abs(slopes.back()) < flat_tol) {
        profile.trend = PsiProfile::Trend::Plateauing;
        profile.plateau_limit = r_last;
        return profile;
    }
    double q = 0.0;
    int nq = 0;
    for (std::size_t i = slopes.size() - 1; i >= 1 && nq < 2; --i, ++nq)
        q += slopes[i] / slopes[i - 1];
    q /= std::max(nq, 1);

    if (q >= 0.85) {
        profile.trend = PsiProfile::Trend::Diverging;
    } else {
        profile.trend = PsiProfile::Trend::Plateauing;
        const double d_last =
            profile.ratios[m - 1].second - profile.ratios[m - 2].second;
        profile.plateau_limit = r_last + (q > 0.0 && q < 1.0 ? d_last * q / (1.0 - q) : 0.0);
    }
    return profile;
}

}  // namespace slm
