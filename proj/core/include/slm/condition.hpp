#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slm/volatility.hpp"

namespace slm {

enum class MartingaleVerdict { Martingale, StrictLocalMartingale, Inconclusive };
enum class ConditionMethod { SymbolicCev, NumericTailFit };

struct ConditionOptions {
    // Fitted tail exponents within this margin of 1 are declared Inconclusive.
    double epsilon_margin = 0.05;
    // When false, CEV structure is ignored and the numeric tail fit runs.
    bool allow_symbolic = true;
    std::vector<double> partial_limits = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    double quad_rel_tol = 1e-9;
};

// Decision about sigma's diffusion via the integral of x/sigma^2(x) over
// [1, inf): divergence <=> the process is a true martingale.
struct ConditionReport {
    MartingaleVerdict verdict = MartingaleVerdict::Inconclusive;
    ConditionMethod method = ConditionMethod::NumericTailFit;
    // (B, integral over [1, B]); nondecreasing in B by positivity.
    std::vector<std::pair<double, double>> partial_integrals;
    // beta in x/sigma^2(x) ~ c * x^-beta near infinity, drift-corrected;
    // band is a half-width covering regression error and fit curvature.
    double tail_exponent = 0.0;
    double tail_exponent_band = 0.0;
    // Estimate of the full integral when it converges.
    std::optional<double> limit_value;
};

// Integral of x/sigma^2(x) over [1, B] by adaptive quadrature.
// Throws DomainError when the integrand is non-finite inside [1, B].
double ds_partial_integral(const VolatilityModel& model, double B, double rel_tol = 1e-9);

// Symbolic rule for CEV (martingale iff p <= 1, limit 1/(alpha^2(2p-2)) when
// convergent); numeric tail-exponent fit otherwise, with an explicit
// Inconclusive verdict inside the epsilon margin.
ConditionReport classify_martingale(const VolatilityModel& model,
                                    const ConditionOptions& options = {});

// The convex function used to control stopped expectations:
//   psi(x) = x                                         for x <= 1,
//   psi(x) = x + int_1^x u/sigma^2(u) * (x-u) du       for x >= 1.
// Closed forms for CEV; adaptive quadrature otherwise.
double psi(const VolatilityModel& model, double x, double rel_tol = 1e-9);

// Batch-evaluation view of psi. Exact closed form for CEV models; for other
// models a cumulative-quadrature table on a log grid with linear
// interpolation (Monte Carlo grade, relative error ~1e-4).
class PsiEvaluator {
public:
    PsiEvaluator(const VolatilityModel& model, double x_max);
    double operator()(double x) const;

    // True when evaluation is a closed form rather than an interpolated table.
    bool exact() const { return closed_form_; }

private:
    bool closed_form_ = false;
    double alpha_ = 1.0, p_ = 1.0;
    std::vector<double> log_xs_;
    std::vector<double> psis_;
};

struct PsiProfile {
    enum class Trend { Diverging, Plateauing, Unknown };

    std::vector<std::pair<double, double>> ratios;  // (x, psi(x)/x)
    bool monotone = true;                           // ratios nondecreasing
    Trend trend = Trend::Unknown;
    std::optional<double> plateau_limit;            // Aitken estimate when Plateauing
};

// Ratios psi(x)/x on an ascending grid in [1, inf). With at least four points
// the per-decade increments decide the trend: increments that keep their size
// mean the ratio diverges (martingale case); geometrically decaying
// increments are extrapolated to the plateau value.
PsiProfile psi_growth_profile(const VolatilityModel& model, std::span<const double> xs);

}  // namespace slm
