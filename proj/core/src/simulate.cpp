#include "slm/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "slm/condition.hpp"
#include "slm/errors.hpp"
#include "slm/math.hpp"
#include "slm/rng.hpp"

namespace slm {

namespace {

constexpr double kOverflowCap = 1e300;
constexpr double kOverflowFraction = 1e-6;

int resolve_threads(int n_threads) {
    if (n_threads > 0) return n_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs work(lo, hi) over a static partition of [0, n_paths). Exceptions from
// workers are rethrown on the caller thread.
template <class Work>
void parallel_over_paths(std::int64_t n_paths, int n_threads, Work&& work) {
    const int threads = std::min<std::int64_t>(resolve_threads(n_threads), std::max<std::int64_t>(n_paths, 1));
    if (threads <= 1) {
        work(0, n_paths);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const std::int64_t chunk = (n_paths + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n_paths);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                work(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

void validate_stopping(const StoppingSpec& spec) {
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        if (!(spec.levels[i] > 1.0))
            throw std::invalid_argument("StoppingSpec: levels must exceed 1");
        if (i > 0 && !(spec.levels[i] > spec.levels[i - 1]))
            throw std::invalid_argument("StoppingSpec: levels must be ascending");
    }
}

// Gather per-path statistics excluding flagged paths; aborts when the flagged
// fraction breaches the policy cap.
template <class ValueFn>
MeanStderr reduce_paths(const PathBatch& batch, ValueFn&& value_of) {
    const std::int64_t n = static_cast<std::int64_t>(batch.terminal_values.size());
    if (batch.overflow_count > 0 &&
        static_cast<double>(batch.overflow_count) > kOverflowFraction * static_cast<double>(n))
        throw DomainError("overflow fraction " + std::to_string(batch.overflow_count) + "/" +
                          std::to_string(n) + " exceeds policy cap 1e-6; estimate aborted");
    std::vector<double> values;
    values.reserve(n);
    for (std::int64_t i = 0; i < n; ++i) {
        if (batch.overflowed.size() && batch.overflowed[i]) continue;
        values.push_back(value_of(i));
    }
    return mean_stderr(values);
}

}  // namespace

PathBatch simulate_paths(const VolatilityModel& model, double x0, double t0, double T,
                         std::int64_t n_steps, std::int64_t n_paths, std::uint64_t seed,
                         const StoppingSpec* barriers, int n_threads) {
    if (!(x0 > 0.0)) throw std::invalid_argument("simulate_paths: need x0 > 0");
    if (!(T >= t0)) throw std::invalid_argument("simulate_paths: need t0 <= T");
    if (n_steps < 1) throw std::invalid_argument("simulate_paths: need n_steps >= 1");
    if (n_paths < 1) throw std::invalid_argument("simulate_paths: need n_paths >= 1");
    if (barriers) validate_stopping(*barriers);

    PathBatch batch;
    batch.x0 = x0;
    batch.t0 = t0;
    batch.T = T;
    batch.n_steps = n_steps;
    batch.scheme = Scheme::EulerAbsorbed;
    batch.rng.seed = seed;
    batch.terminal_values.assign(n_paths, x0);
    batch.absorbed.assign(n_paths, 0);
    batch.running_max.assign(n_paths, x0);
    batch.overflowed.assign(n_paths, 0);
    if (barriers) {
        batch.barriers.resize(barriers->levels.size());
        for (std::size_t k = 0; k < barriers->levels.size(); ++k) {
            batch.barriers[k].level = barriers->levels[k];
            batch.barriers[k].stopped_values.assign(n_paths, x0);
            batch.barriers[k].exit_times.assign(n_paths, T);
            batch.barriers[k].exited.assign(n_paths, 0);
        }
    }
    if (T == t0) return batch;  // degenerate horizon: X_T = x0 surely

    const double dt = (T - t0) / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    const std::size_t n_levels = barriers ? barriers->levels.size() : 0;
    std::atomic<std::int64_t> overflow_total{0};

    parallel_over_paths(n_paths, n_threads, [&](std::int64_t lo, std::int64_t hi) {
        std::vector<std::uint8_t> level_hit(n_levels);
        for (std::int64_t i = lo; i < hi; ++i) {
            PathRng rng(seed, static_cast<std::uint64_t>(i));
            double x = x0;
            double x_max = x0;
            std::fill(level_hit.begin(), level_hit.end(), 0);
            std::size_t hits = 0;

            const auto record_exits_at = [&](double value, double time) {
                for (std::size_t k = 0; k < n_levels; ++k) {
                    if (level_hit[k]) continue;
                    const double n = batch.barriers[k].level;
                    if (value >= n || value <= 1.0 / n) {
                        batch.barriers[k].stopped_values[i] = value;
                        batch.barriers[k].exit_times[i] = time;
                        batch.barriers[k].exited[i] = 1;
                        level_hit[k] = 1;
                        ++hits;
                    }
                }
            };
            record_exits_at(x0, t0);  // x0 may already sit outside a band

            for (std::int64_t k = 0; k < n_steps; ++k) {
                const double s = model(x);
                if (!std::isfinite(s)) {
                    if (x > 1e6) {
                        // sigma overflowed on an exploding path; same policy
                        // as a value overflow.
                        batch.overflowed[i] = 1;
                        break;
                    }
                    throw DomainError("simulate_paths: sigma non-finite at x=" +
                                      std::to_string(x) + " (step " + std::to_string(k) + ")");
                }
                const double z = rng.next_normal();
                const double x_next = x + s * sqrt_dt * z;
                const double t_next = t0 + dt * static_cast<double>(k + 1);

                if (!(x_next > 0.0)) {
                    // Absorbed: the state is 0 from this grid point onward.
                    x = 0.0;
                    batch.absorbed[i] = 1;
                    record_exits_at(0.0, t_next);
                    break;
                }
                if (!std::isfinite(x_next) || x_next > kOverflowCap) {
                    batch.overflowed[i] = 1;
                    break;
                }
                x = x_next;
                x_max = std::max(x_max, x);
                if (hits < n_levels) record_exits_at(x, t_next);
            }

            batch.terminal_values[i] = x;
            batch.running_max[i] = x_max;
            if (!batch.overflowed[i]) {
                // Unexited levels are capped at T with the terminal value.
                for (std::size_t k2 = 0; k2 < n_levels; ++k2) {
                    if (!level_hit[k2]) {
                        batch.barriers[k2].stopped_values[i] = x;
                        batch.barriers[k2].exit_times[i] = T;
                    }
                }
            } else {
                overflow_total.fetch_add(1, std::memory_order_relaxed);
            }
        }
    });

    batch.overflow_count = overflow_total.load();
    return batch;
}

PathBatch inverse_bessel_exact(double x0, double t0, double T, std::int64_t n_paths,
                               std::uint64_t seed, int n_threads) {
    if (!(x0 > 0.0)) throw std::invalid_argument("inverse_bessel_exact: need x0 > 0");
    if (!(T >= t0)) throw std::invalid_argument("inverse_bessel_exact: need t0 <= T");
    if (n_paths < 1) throw std::invalid_argument("inverse_bessel_exact: need n_paths >= 1");

    PathBatch batch;
    batch.x0 = x0;
    batch.t0 = t0;
    batch.T = T;
    batch.n_steps = 1;
    batch.scheme = Scheme::InverseBesselExact;
    batch.rng.seed = seed;
    batch.terminal_values.assign(n_paths, x0);
    batch.absorbed.assign(n_paths, 0);
    batch.overflowed.assign(n_paths, 0);

    const double tau = T - t0;
    if (tau == 0.0) return batch;
    const double sqrt_tau = std::sqrt(tau);
    const double r0 = 1.0 / x0;

    parallel_over_paths(n_paths, n_threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            PathRng rng(seed, static_cast<std::uint64_t>(i));
            const double b1 = r0 + sqrt_tau * rng.next_normal();
            const double b2 = sqrt_tau * rng.next_normal();
            const double b3 = sqrt_tau * rng.next_normal();
            batch.terminal_values[i] = 1.0 / std::sqrt(b1 * b1 + b2 * b2 + b3 * b3);
        }
    });
    return batch;
}

MCEstimate estimate_payoff_expectation(const VolatilityModel& model, const PayoffSpec& payoff,
                                       double x, double t, double T, const McParams& mc) {
    MCEstimate est;
    est.seed = mc.seed;
    est.n_paths = mc.n_paths;
    if (payoff.growth().kind == GrowthKind::Superlinear)
        est.warning = "payoff has superlinear growth; the expectation may be infinite";

    if (payoff.kind() == PayoffSpec::Kind::Constant) {
        est.mean = payoff.constant_value();
        est.std_error = 0.0;
        est.scheme = "constant";
        return est;
    }

    PathBatch batch;
    if (model.is_cev(1.0, 2.0)) {
        batch = inverse_bessel_exact(x, t, T, mc.n_paths, mc.seed, mc.n_threads);
        est.scheme = "inverse-bessel-exact";
    } else {
        batch = simulate_paths(model, x, t, T, mc.resolve_steps(T - t), mc.n_paths, mc.seed,
                               nullptr, mc.n_threads);
        est.scheme = "euler-absorbed";
    }
    const MeanStderr ms = reduce_paths(batch, [&](std::int64_t i) {
        return payoff(batch.terminal_values[i]);
    });
    est.mean = ms.mean;
    est.std_error = ms.std_error;
    est.n_paths = static_cast<std::int64_t>(ms.n);
    return est;
}

MCEstimate martingale_defect(const VolatilityModel& model, double x, double t, double T,
                             const McParams& mc, const DefectOptions& options) {
    MCEstimate est;
    est.seed = mc.seed;

    PathBatch batch;
    if (model.is_cev(1.0, 2.0)) {
        batch = inverse_bessel_exact(x, t, T, mc.n_paths, mc.seed, mc.n_threads);
        est.scheme = "inverse-bessel-exact";
    } else if (options.force_euler) {
        batch = simulate_paths(model, x, t, T, mc.resolve_steps(T - t), mc.n_paths, mc.seed,
                               nullptr, mc.n_threads);
        est.scheme = "euler-absorbed";
        est.warning =
            "euler scheme forced: the absorbed Euler chain has mean >= x0 by construction "
            "and cannot exhibit a positive defect";
    } else {
        throw std::invalid_argument(
            "martingale_defect: no exact oracle for this model; the Euler chain is "
            "structurally unable to see the defect. Pass force_euler to override.");
    }
    const MeanStderr ms = reduce_paths(batch, [&](std::int64_t i) {
        return batch.terminal_values[i];
    });
    est.mean = x - ms.mean;
    est.std_error = ms.std_error;
    est.n_paths = static_cast<std::int64_t>(ms.n);
    return est;
}

std::vector<MCEstimate> estimate_minimal_price(const VolatilityModel& model,
                                               const PayoffSpec& payoff, double x, double t,
                                               double T, std::span<const double> ladder,
                                               const McParams& mc) {
    if (ladder.empty()) throw std::invalid_argument("estimate_minimal_price: empty ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0))
            throw std::invalid_argument("estimate_minimal_price: levels must be positive");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            throw std::invalid_argument("estimate_minimal_price: ladder must be ascending");
    }

    // One set of common paths for every rung keeps the ladder monotone by
    // construction. Killed paths (running max at or beyond the rung) simply
    // contribute 0, so overflowed paths need no exclusion here: they crossed
    // every rung long before the cap.
    const PathBatch batch = simulate_paths(model, x, t, T, mc.resolve_steps(T - t), mc.n_paths,
                                           mc.seed, nullptr, mc.n_threads);
    std::vector<MCEstimate> out;
    out.reserve(ladder.size());
    std::vector<double> values(batch.terminal_values.size());
    for (double level : ladder) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            const bool killed = batch.overflowed[i] || batch.running_max[i] >= level;
            values[i] = killed ? 0.0 : payoff(batch.terminal_values[i]);
        }
        const MeanStderr ms = mean_stderr(values);
        MCEstimate est;
        est.mean = ms.mean;
        est.std_error = ms.std_error;
        est.n_paths = static_cast<std::int64_t>(ms.n);
        est.scheme = "euler-absorbed/killed-at-" + std::to_string(level);
        est.seed = mc.seed;
        out.push_back(std::move(est));
    }
    return out;
}

std::vector<PsiBoundCheck> psi_bound_check(const VolatilityModel& model, double x, double t,
                                           double T, const StoppingSpec& stopping,
                                           const McParams& mc) {
    if (stopping.levels.empty())
        throw std::invalid_argument("psi_bound_check: no stopping levels");
    validate_stopping(stopping);

    const PathBatch batch = simulate_paths(model, x, t, T, mc.resolve_steps(T - t), mc.n_paths,
                                           mc.seed, &stopping, mc.n_threads);
    const PsiEvaluator psi_of(model, stopping.levels.back() * 4.0);
    const double bound = psi(model, x) + x * (T - t) / 2.0;
    // Interpolated psi carries a small evaluation tolerance; without it the
    // degenerate T == t case (exact equality) could flip on rounding alone.
    const double slack = psi_of.exact() ? 0.0 : 1e-4 * std::max(1.0, bound);

    std::vector<PsiBoundCheck> out;
    out.reserve(stopping.levels.size());
    for (std::size_t k = 0; k < stopping.levels.size(); ++k) {
        const auto& rec = batch.barriers[k];
        const MeanStderr ms = reduce_paths(batch, [&](std::int64_t i) {
            return psi_of(rec.stopped_values[i]);
        });
        PsiBoundCheck check;
        check.level = rec.level;
        check.bound = bound;
        check.psi_at_stop.mean = ms.mean;
        check.psi_at_stop.std_error = ms.std_error;
        check.psi_at_stop.n_paths = static_cast<std::int64_t>(ms.n);
        check.psi_at_stop.scheme = "euler-absorbed/stopped";
        check.psi_at_stop.seed = mc.seed;
        check.pass = ms.mean <= check.bound + 3.0 * ms.std_error + slack;
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace slm
