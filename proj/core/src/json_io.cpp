#include "slm/json_io.hpp"

#include "slm/math.hpp"

namespace slm {

const char* to_string(MartingaleVerdict v) {
    switch (v) {
        case MartingaleVerdict::Martingale: return "martingale";
        case MartingaleVerdict::StrictLocalMartingale: return "strict-local-martingale";
        case MartingaleVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(ConditionMethod m) {
    switch (m) {
        case ConditionMethod::SymbolicCev: return "symbolic-cev";
        case ConditionMethod::NumericTailFit: return "numeric-tail-fit";
    }
    return "?";
}

const char* to_string(GrowthKind k) {
    switch (k) {
        case GrowthKind::AtMostLinear: return "at-most-linear";
        case GrowthKind::StrictlySublinear: return "strictly-sublinear";
        case GrowthKind::Superlinear: return "superlinear";
    }
    return "?";
}

const char* to_string(PsiProfile::Trend t) {
    switch (t) {
        case PsiProfile::Trend::Diverging: return "diverging";
        case PsiProfile::Trend::Plateauing: return "plateauing";
        case PsiProfile::Trend::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(GapTrend t) {
    switch (t) {
        case GapTrend::VanishingGap: return "vanishing-gap";
        case GapTrend::PersistentGap: return "persistent-gap";
    }
    return "?";
}

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::EulerAbsorbed: return "euler-absorbed";
        case Scheme::InverseBesselExact: return "inverse-bessel-exact";
    }
    return "?";
}

void to_json(nlohmann::json& j, const GrowthClass& g) {
    j = nlohmann::json{{"kind", to_string(g.kind)},
                       {"linear_bound", g.linear_bound},
                       {"tail_slope", g.tail_slope},
                       {"fitted", g.fitted}};
}

void to_json(nlohmann::json& j, const AssumptionReport& r) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.sigma_m2_integrals) {
        cells.push_back({{"lo", c.lo},
                         {"hi", c.hi},
                         {"value", std::isfinite(c.value) ? nlohmann::json(c.value)
                                                          : nlohmann::json()},
                         {"finite", c.finite}});
    }
    j = nlohmann::json{{"positivity_ok", r.positivity_ok},
                       {"local_integrability_ok", r.local_integrability_ok},
                       {"sigma_m2_integrals", std::move(cells)},
                       {"holder_exponent", r.holder_exponent},
                       {"holder_half_ok", r.holder_half_ok},
                       {"notes", r.notes}};
}

void to_json(nlohmann::json& j, const ConditionReport& r) {
    nlohmann::json partials = nlohmann::json::array();
    for (const auto& [b, v] : r.partial_integrals) partials.push_back({b, v});
    j = nlohmann::json{{"verdict", to_string(r.verdict)},
                       {"method", to_string(r.method)},
                       {"partial_integrals", std::move(partials)},
                       {"tail_exponent", r.tail_exponent},
                       {"tail_exponent_band", r.tail_exponent_band},
                       {"limit_value",
                        r.limit_value ? nlohmann::json(*r.limit_value) : nlohmann::json()}};
}

void to_json(nlohmann::json& j, const MCEstimate& e) {
    j = nlohmann::json{{"mean", e.mean},
                       {"stderr", e.std_error},
                       {"n_paths", e.n_paths},
                       {"ci95", {e.ci95_low(), e.ci95_high()}},
                       {"scheme", e.scheme},
                       {"seed", e.seed}};
    if (!e.warning.empty()) j["warning"] = e.warning;
}

void to_json(nlohmann::json& j, const RngDescriptor& r) {
    j = nlohmann::json{
        {"seed", r.seed}, {"algorithm", r.algorithm}, {"layout", r.layout}};
}

void to_json(nlohmann::json& j, const PathBatch& b) {
    std::int64_t absorbed = 0;
    for (auto f : b.absorbed) absorbed += f;
    const MeanStderr terminal = mean_stderr(b.terminal_values);

    nlohmann::json barriers = nlohmann::json::array();
    for (const auto& rec : b.barriers) {
        std::int64_t exited = 0;
        for (auto f : rec.exited) exited += f;
        const MeanStderr stopped = mean_stderr(rec.stopped_values);
        barriers.push_back({{"level", rec.level},
                            {"exited_count", exited},
                            {"stopped_mean", stopped.mean},
                            {"stopped_stderr", stopped.std_error}});
    }
    j = nlohmann::json{{"x0", b.x0},
                       {"t0", b.t0},
                       {"T", b.T},
                       {"n_steps", b.n_steps},
                       {"n_paths", static_cast<std::int64_t>(b.terminal_values.size())},
                       {"scheme", to_string(b.scheme)},
                       {"terminal_mean", terminal.mean},
                       {"terminal_stderr", terminal.std_error},
                       {"absorbed_count", absorbed},
                       {"overflow_count", b.overflow_count},
                       {"rng", b.rng},
                       {"barriers", std::move(barriers)}};
}

void to_json(nlohmann::json& j, const PsiProfile& p) {
    nlohmann::json ratios = nlohmann::json::array();
    for (const auto& [x, r] : p.ratios) ratios.push_back({x, r});
    j = nlohmann::json{{"ratios", std::move(ratios)},
                       {"monotone", p.monotone},
                       {"trend", to_string(p.trend)},
                       {"plateau_limit", p.plateau_limit ? nlohmann::json(*p.plateau_limit)
                                                         : nlohmann::json()}};
}

void to_json(nlohmann::json& j, const PsiBoundCheck& c) {
    j = nlohmann::json{{"level", c.level},
                       {"estimate", c.psi_at_stop},
                       {"bound", c.bound},
                       {"pass", c.pass}};
}

void to_json(nlohmann::json& j, const PDESolution& s) {
    j = nlohmann::json{
        {"sigma", s.sigma_spec},
        {"payoff", s.payoff_spec},
        {"bc", to_string(s.bc_kind)},
        {"theta", s.theta},
        {"rannacher_steps", s.rannacher_steps},
        {"grid",
         {{"x_max", s.grid.x_max()},
          {"nx", s.grid.nx()},
          {"nt", s.grid.nt()},
          {"T", s.grid.horizon()},
          {"spacing", s.grid.spacing == GridSpacing::Uniform ? "uniform" : "log-uniform"}}}};
}

void to_json(nlohmann::json& j, const GapReport& r) {
    j = nlohmann::json{{"sigma", r.sigma_spec},
                       {"payoff", r.payoff_spec},
                       {"bc_a", to_string(r.bc_a)},
                       {"bc_b", to_string(r.bc_b)},
                       {"x_max_ladder", r.x_max_ladder},
                       {"reference_xs", r.reference_xs},
                       {"gaps", r.gaps},
                       {"rung_gaps", r.rung_gaps},
                       {"trend", to_string(r.trend)},
                       {"persistent_level", r.persistent_level},
                       {"monotone_decreasing", r.monotone_decreasing},
                       {"stabilized", r.stabilized}};
}

}  // namespace slm
