#pragma once

#include <string>
#include <vector>

#include "slm/probe.hpp"
#include "slm/volatility.hpp"

namespace slm {

struct IntervalIntegral {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;  // integral of sigma^-2 over [lo, hi]
    bool finite = false;
};

// Standing-assumption check results. Reproducible given the same probe grid;
// failures are reported, not thrown (the only exception is non-finite sigma).
struct AssumptionReport {
    bool positivity_ok = false;
    bool local_integrability_ok = false;
    std::vector<IntervalIntegral> sigma_m2_integrals;
    double holder_exponent = 1.0;  // min estimated local exponent, capped at 1
    bool holder_half_ok = false;   // exponent >= 0.45 (advisory only)
    std::string notes;
};

AssumptionReport validate_assumptions(const VolatilityModel& model,
                                      const ProbeGrid& probe = default_probe_grid());

}  // namespace slm
