#include "slm/tridiag.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace slm {

void TridiagonalSolver::solve(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n || sup.size() != n || rhs.size() != n)
        throw std::invalid_argument("TridiagonalSolver: inconsistent sizes");
    scratch_.resize(n);

    double pivot = diag[0];
    assert(std::abs(pivot) > 0.0 && "singular tridiagonal system");
    scratch_[0] = sup[0] / pivot;
    rhs[0] /= pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i] * scratch_[i - 1];
        assert(std::abs(pivot) > 0.0 && "singular tridiagonal system");
        scratch_[i] = sup[i] / pivot;
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch_[i] * rhs[i + 1];
}

}  // namespace slm
