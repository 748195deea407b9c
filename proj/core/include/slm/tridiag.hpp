#pragma once

#include <span>
#include <vector>

namespace slm {

// Thomas algorithm with a reusable scratch buffer. The systems assembled by
// the theta scheme are strictly diagonally dominant, which is asserted.
class TridiagonalSolver {
public:
    // Solves sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i] in place;
    // sub[0] and sup[n-1] are ignored.
    void solve(std::span<const double> sub, std::span<const double> diag,
               std::span<const double> sup, std::span<double> rhs_to_solution);

private:
    std::vector<double> scratch_;
};

}  // namespace slm
