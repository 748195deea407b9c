#pragma once

#include <cstdint>
#include <string>

namespace slm {

struct McParams {
    std::int64_t n_paths = 100000;
    // Explicit step count; 0 derives it as steps_per_unit_time * (T - t).
    std::int64_t n_steps = 0;
    int steps_per_unit_time = 2000;
    std::uint64_t seed = 0;
    int n_threads = 0;  // 0: hardware concurrency

    std::int64_t resolve_steps(double horizon) const {
        if (n_steps > 0) return n_steps;
        const double want = steps_per_unit_time * horizon;
        return want < 1.0 ? 1 : static_cast<std::int64_t>(want + 0.5);
    }
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_paths = 0;
    std::string scheme;       // "euler-absorbed", "inverse-bessel-exact", ...
    std::uint64_t seed = 0;
    std::string warning;      // nonempty when a precondition was waived

    double ci95_low() const { return mean - 1.96 * std_error; }
    double ci95_high() const { return mean + 1.96 * std_error; }
};

}  // namespace slm
