#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slm/pde.hpp"

namespace slm {

// Shortest round-trip decimal form ('.' separator, no locale).
std::string format_double(double v);

// All writers emit a header row, UTF-8, LF line endings.
void write_series_csv(const std::string& path, const std::string& col_a,
                      const std::string& col_b,
                      std::span<const std::pair<double, double>> rows);

void write_column_csv(const std::string& path, const std::string& col,
                      std::span<const double> values);

// Long format: x,t,u — one row per grid node.
void write_surface_csv(const std::string& path, const PDESolution& solution);

// x_max,gap rows (gap aggregated over the reference points).
void write_gap_csv(const std::string& path, const GapReport& report);

}  // namespace slm
