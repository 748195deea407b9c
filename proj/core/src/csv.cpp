#include "slm/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace slm {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_series_csv(const std::string& path, const std::string& col_a,
                      const std::string& col_b,
                      std::span<const std::pair<double, double>> rows) {
    auto out = open_out(path);
    out << col_a << ',' << col_b << '\n';
    for (const auto& [a, b] : rows) out << format_double(a) << ',' << format_double(b) << '\n';
}

void write_column_csv(const std::string& path, const std::string& col,
                      std::span<const double> values) {
    auto out = open_out(path);
    out << col << '\n';
    for (double v : values) out << format_double(v) << '\n';
}

void write_surface_csv(const std::string& path, const PDESolution& solution) {
    auto out = open_out(path);
    out << "x,t,u\n";
    for (int j = 0; j < solution.grid.nt(); ++j)
        for (int i = 0; i < solution.grid.nx(); ++i)
            out << format_double(solution.grid.x_nodes[i]) << ','
                << format_double(solution.grid.t_nodes[j]) << ','
                << format_double(solution.at(i, j)) << '\n';
}

void write_gap_csv(const std::string& path, const GapReport& report) {
    auto out = open_out(path);
    out << "x_max,gap\n";
    for (std::size_t k = 0; k < report.x_max_ladder.size(); ++k)
        out << format_double(report.x_max_ladder[k]) << ','
            << format_double(report.rung_gaps[k]) << '\n';
}

}  // namespace slm
