#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slm/mc.hpp"
#include "slm/payoff.hpp"
#include "slm/volatility.hpp"

namespace slm {

enum class Scheme { EulerAbsorbed, InverseBesselExact };

// Stopping levels n defining tau_n = first exit of [1/n, n], capped at T.
struct StoppingSpec {
    std::vector<double> levels;  // ascending, each > 1
};

struct RngDescriptor {
    std::uint64_t seed = 0;
    std::string algorithm = "xoshiro256++/box-muller";
    std::string layout = "per-path-substream";
};

// Stopped state per stopping level: the value at the first grid point at or
// beyond the barrier (discrete overshoot kept) or the terminal value when the
// path never exits before T.
struct BarrierRecord {
    double level = 0.0;
    std::vector<double> stopped_values;
    std::vector<double> exit_times;
    std::vector<std::uint8_t> exited;
};

struct PathBatch {
    double x0 = 0.0;
    double t0 = 0.0;
    double T = 0.0;
    std::int64_t n_steps = 0;
    Scheme scheme = Scheme::EulerAbsorbed;
    std::vector<double> terminal_values;
    std::vector<std::uint8_t> absorbed;       // hit zero (value frozen at 0)
    std::vector<double> running_max;          // max over grid points (Euler only)
    std::vector<BarrierRecord> barriers;
    RngDescriptor rng;
    std::vector<std::uint8_t> overflowed;     // |X| blew past the overflow cap
    std::int64_t overflow_count = 0;
};

// Euler-Maruyama for dX = sigma(X) dW with permanent absorption at the first
// nonpositive value. Results are a pure function of (inputs, seed): identical
// across thread counts. Paths whose value exceeds 1e300 (or whose sigma
// overflows en route) are flagged and excluded by the estimators; sigma
// returning non-finite values at moderate x aborts with a diagnostic.
PathBatch simulate_paths(const VolatilityModel& model, double x0, double t0, double T,
                         std::int64_t n_steps, std::int64_t n_paths, std::uint64_t seed,
                         const StoppingSpec* barriers = nullptr, int n_threads = 0);

// Exact terminal sampling for sigma(x) = x^2: X = 1/R with R the norm of a
// 3-d Brownian motion started at (1/x0, 0, 0). No time-discretization bias
// and never absorbed.
PathBatch inverse_bessel_exact(double x0, double t0, double T, std::int64_t n_paths,
                               std::uint64_t seed, int n_threads = 0);

// Plain Monte Carlo mean of g(X_T). Uses the exact inverse-Bessel oracle when
// the model is CEV(alpha=1, p=2), Euler otherwise. Warns on superlinear g.
MCEstimate estimate_payoff_expectation(const VolatilityModel& model, const PayoffSpec& payoff,
                                       double x, double t, double T, const McParams& mc);

struct DefectOptions {
    // The absorbed Euler chain has conditional mean equal to its current
    // state, so its sample mean cannot drift below x0: it is structurally
    // blind to the defect. Estimation on Euler therefore requires this flag.
    bool force_euler = false;
};

// x - E[X_T], the martingale defect, positive exactly in the strict-local
// case. CEV(1,2) runs on the exact oracle; other models need force_euler and
// get a warning attached.
MCEstimate martingale_defect(const VolatilityModel& model, double x, double t, double T,
                             const McParams& mc, const DefectOptions& options = {});

// E[g(X_T); path never reached level] for each ladder level, all from one set
// of paths killed at the upper barrier. Nondecreasing in the level by
// construction; increases to the minimal-solution value E[g(X_T)].
std::vector<MCEstimate> estimate_minimal_price(const VolatilityModel& model,
                                               const PayoffSpec& payoff, double x, double t,
                                               double T, std::span<const double> ladder,
                                               const McParams& mc);

struct PsiBoundCheck {
    double level = 0.0;
    MCEstimate psi_at_stop;   // estimate of E[psi(X at tau_n)]
    double bound = 0.0;       // psi(x) + x (T - t) / 2
    bool pass = false;        // estimate <= bound + 3 * stderr
};

// Monte Carlo check of E[psi(X_{tau_n})] <= psi(x) + x(T-t)/2 per level.
std::vector<PsiBoundCheck> psi_bound_check(const VolatilityModel& model, double x, double t,
                                           double T, const StoppingSpec& stopping,
                                           const McParams& mc);

}  // namespace slm
