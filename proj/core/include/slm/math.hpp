#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace slm {

inline double norm_pdf(double x) {
    return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

// Standard normal CDF through erfc; accurate to machine precision in both tails.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// Least-squares line y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 1.0;
    std::size_t n = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Pairwise (cascade) summation. The reduction tree depends only on the array
// length, so results are bit-identical no matter how the array was produced.
double pairwise_sum(std::span<const double> values);

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

// Sample mean and standard error of the mean, both via pairwise sums.
MeanStderr mean_stderr(std::span<const double> values);

}  // namespace slm
