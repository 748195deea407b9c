#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slm/condition.hpp"
#include "slm/grid.hpp"
#include "slm/mc.hpp"
#include "slm/payoff.hpp"
#include "slm/volatility.hpp"

namespace slm {

// Far-field condition at x_max. The continuous problem selects solutions by a
// growth class, which a truncated grid cannot express; the boundary choice is
// therefore explicit, and its effect is itself an object of study here.
struct FarFieldBC {
    enum class Kind { DirichletPayoff, ZeroGamma, DirichletProfile };

    Kind kind = Kind::DirichletPayoff;
    std::function<double(double)> profile;  // t -> u(x_max, t); DirichletProfile only

    static FarFieldBC dirichlet_payoff() { return {Kind::DirichletPayoff, {}}; }
    static FarFieldBC zero_gamma() { return {Kind::ZeroGamma, {}}; }
    static FarFieldBC dirichlet_profile(std::function<double(double)> p) {
        return {Kind::DirichletProfile, std::move(p)};
    }
};

const char* to_string(FarFieldBC::Kind kind);

struct SolverParams {
    double theta = 0.5;       // 1 fully implicit, 1/2 Crank-Nicolson
    int rannacher_steps = 4;  // fully implicit startup steps when theta < 1
};

struct PDESolution {
    Grid grid;
    std::vector<double> values;  // values[j * nx + i] = u(x_i, t_j)
    FarFieldBC::Kind bc_kind = FarFieldBC::Kind::DirichletPayoff;
    double theta = 0.5;
    int rannacher_steps = 4;
    std::string sigma_spec;
    std::string payoff_spec;

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(j) * grid.x_nodes.size() + i];
    }
    // Bilinear interpolation; clamps to the grid box.
    double value_at(double x, double t) const;
};

// Backward theta-scheme march of u_t + sigma^2(x)/2 u_xx = 0 from u(., T) = g
// with u(0, t) = g(0) and the far-field row per bc. Central second differences
// on (possibly nonuniform) nodes, one tridiagonal solve per step.
// Throws SolverError with a step diagnostic if a non-finite value appears.
PDESolution solve_cauchy(const VolatilityModel& model, const PayoffSpec& payoff,
                         const Grid& grid, const FarFieldBC& bc, const SolverParams& params = {});

struct ResidualOptions {
    // Points with t above T - terminal_margin are excluded (payoff kinks make
    // the terminal corner non-smooth).
    double terminal_margin = 0.01;
    // Analytic-surface probing: stencil spacing and probe window.
    double stencil_h = 1e-3;
    double x_lo = 0.2;
    double x_hi = 3.0;
    int probe_nx = 41;
    int probe_nt = 21;
};

// Max |u_t + sigma^2/2 u_xx| over interior grid nodes (discrete surface) ...
double pde_residual(const PDESolution& solution, const VolatilityModel& model,
                    const ResidualOptions& options = {});
// ... or over a probe stencil for an analytic candidate surface u(x, t).
double pde_residual(const std::function<double(double, double)>& u, const VolatilityModel& model,
                    double T, const ResidualOptions& options = {});

struct DefectProfile {
    Grid grid;
    std::vector<double> values;  // u*(x_i, t_j), layout as PDESolution
    std::string warning;         // set when the condition verdict was Inconclusive
};

struct DefectProfileOptions {
    // Reuse a precomputed verdict; classified internally when null.
    const ConditionReport* verdict = nullptr;
    // Generic (non-CEV(1,2)) strict-local models price each node by killed-
    // ladder Monte Carlo with these barrier multipliers of max(x, 1).
    std::vector<double> ladder_multipliers = {4.0, 8.0, 16.0};
    McParams mc;
};

// The defect surface u*(x, t) = x - E[X_T | X_t = x]: closed form for
// CEV(1,2), identically zero for martingale verdicts, Monte Carlo ladder
// extrapolation otherwise. Zero on the x = 0 and t = T edges by construction.
DefectProfile defect_profile(const VolatilityModel& model, const Grid& grid,
                             const DefectProfileOptions& options = {});

// u + lambda * u_star on a shared grid; terminal and x = 0 rows are unchanged
// because the defect vanishes there.
PDESolution add_defect_solution(const PDESolution& u, const DefectProfile& defect, double lambda);

enum class GapTrend { VanishingGap, PersistentGap };

struct GapStudyConfig {
    std::vector<double> x_max_ladder = {8.0, 16.0, 32.0};
    std::vector<double> reference_xs = {1.0};
    double T = 1.0;
    // Resolution at the first rung; the log-part node count scales with
    // ln(x_max) so spacing near x = 1 stays comparable across rungs.
    int base_nx = 400;
    int base_nt = 400;
    SolverParams solver;
    double vanish_tol = 1e-2;     // final gap below this (and decreasing) vanishes
    double stabilize_rel = 0.10;  // last two rungs within 10% count as stabilized
};

struct GapReport {
    std::string sigma_spec;
    std::string payoff_spec;
    FarFieldBC::Kind bc_a = FarFieldBC::Kind::DirichletPayoff;
    FarFieldBC::Kind bc_b = FarFieldBC::Kind::ZeroGamma;
    std::vector<double> x_max_ladder;
    std::vector<double> reference_xs;
    std::vector<std::vector<double>> gaps;  // gaps[rung][ref] = |u_A - u_B|(x_ref, 0)
    std::vector<double> rung_gaps;          // max over reference points per rung
    GapTrend trend = GapTrend::PersistentGap;
    double persistent_level = 0.0;
    bool monotone_decreasing = false;
    bool stabilized = false;
};

// Solves under both boundary conditions along the x_max ladder and classifies
// the gap trend: the numerical face of the uniqueness dichotomy.
GapReport uniqueness_gap_study(const VolatilityModel& model, const PayoffSpec& payoff,
                               const FarFieldBC& bc_a, const FarFieldBC& bc_b,
                               const GapStudyConfig& config = {});

}  // namespace slm
