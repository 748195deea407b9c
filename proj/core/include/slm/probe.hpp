#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace slm {

// A finite set of sample points used by validation and classification passes.
struct ProbeGrid {
    std::vector<double> points;

    static ProbeGrid geometric(double lo, double hi, int n) {
        if (!(lo > 0) || !(hi > lo) || n < 2)
            throw std::invalid_argument("ProbeGrid::geometric: need 0 < lo < hi, n >= 2");
        ProbeGrid g;
        g.points.resize(n);
        const double step = std::log(hi / lo) / (n - 1);
        for (int i = 0; i < n; ++i) g.points[i] = lo * std::exp(step * i);
        g.points.back() = hi;
        return g;
    }

    static ProbeGrid linear(double lo, double hi, int n) {
        if (!(hi > lo) || n < 2)
            throw std::invalid_argument("ProbeGrid::linear: need lo < hi, n >= 2");
        ProbeGrid g;
        g.points.resize(n);
        const double step = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) g.points[i] = lo + step * i;
        g.points.back() = hi;
        return g;
    }
};

// All interesting behavior of the volatilities studied here lives near 0 and
// at infinity, hence the geometric default.
inline const ProbeGrid& default_probe_grid() {
    static const ProbeGrid g = ProbeGrid::geometric(0.01, 1e6, 200);
    return g;
}

}  // namespace slm
