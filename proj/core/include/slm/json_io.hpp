#pragma once

#include <nlohmann/json.hpp>

#include "slm/assumptions.hpp"
#include "slm/condition.hpp"
#include "slm/mc.hpp"
#include "slm/payoff.hpp"
#include "slm/pde.hpp"
#include "slm/simulate.hpp"

namespace slm {

// Stable JSON field names for all report types; the schemas/ directory in the
// repository root documents the exact shapes.

const char* to_string(MartingaleVerdict v);
const char* to_string(ConditionMethod m);
const char* to_string(GrowthKind k);
const char* to_string(PsiProfile::Trend t);
const char* to_string(GapTrend t);
const char* to_string(Scheme s);

void to_json(nlohmann::json& j, const GrowthClass& g);
void to_json(nlohmann::json& j, const AssumptionReport& r);
void to_json(nlohmann::json& j, const ConditionReport& r);
void to_json(nlohmann::json& j, const MCEstimate& e);
void to_json(nlohmann::json& j, const RngDescriptor& r);
// Summary only (counts and moments); terminal values go to CSV when wanted.
void to_json(nlohmann::json& j, const PathBatch& b);
void to_json(nlohmann::json& j, const PsiProfile& p);
void to_json(nlohmann::json& j, const PsiBoundCheck& c);
// Metadata (grid, scheme, specs); the surface itself goes to CSV.
void to_json(nlohmann::json& j, const PDESolution& s);
void to_json(nlohmann::json& j, const GapReport& r);

}  // namespace slm
