#include "slm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slm {

namespace {

std::vector<double> time_nodes(double T, int n_t) {
    if (!(T > 0.0)) throw std::invalid_argument("Grid: need T > 0");
    if (n_t < 2) throw std::invalid_argument("Grid: need at least 2 time nodes");
    std::vector<double> t(n_t);
    for (int j = 0; j < n_t; ++j) t[j] = T * j / (n_t - 1);
    t.back() = T;
    return t;
}

void check_space(double x_max, int n_x) {
    if (!(x_max > 0.0)) throw std::invalid_argument("Grid: need x_max > 0");
    if (n_x < 5) throw std::invalid_argument("Grid: need at least 3 interior nodes");
}

}  // namespace

Grid Grid::uniform(double x_max, int n_x, double T, int n_t) {
    check_space(x_max, n_x);
    Grid g;
    g.spacing = GridSpacing::Uniform;
    g.x_nodes.resize(n_x);
    for (int i = 0; i < n_x; ++i) g.x_nodes[i] = x_max * i / (n_x - 1);
    g.x_nodes.back() = x_max;
    g.t_nodes = time_nodes(T, n_t);
    return g;
}

Grid Grid::log_uniform(double x_max, int n_x, double T, int n_t) {
    check_space(x_max, n_x);
    if (x_max <= 1.0) return uniform(x_max, n_x, T, n_t);

    // Split intervals so the uniform patch spacing 1/n_lin matches the first
    // log step ln(x_max)/n_log.
    const int intervals = n_x - 1;
    const double lxm = std::log(x_max);
    int n_lin = static_cast<int>(std::round(intervals / (1.0 + lxm)));
    n_lin = std::clamp(n_lin, 2, intervals - 2);
    const int n_log = intervals - n_lin;

    Grid g;
    g.spacing = GridSpacing::LogUniform;
    g.x_nodes.reserve(n_x);
    for (int i = 0; i < n_lin; ++i)
        g.x_nodes.push_back(static_cast<double>(i) / n_lin);
    for (int j = 0; j <= n_log; ++j)
        g.x_nodes.push_back(std::exp(lxm * j / n_log));
    g.x_nodes.back() = x_max;
    g.t_nodes = time_nodes(T, n_t);
    return g;
}

int Grid::index_of_x(double x, double tol) const {
    const auto it = std::lower_bound(x_nodes.begin(), x_nodes.end(), x - tol);
    if (it == x_nodes.end()) return -1;
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(*it - x) <= tol * scale) return static_cast<int>(it - x_nodes.begin());
    return -1;
}

bool Grid::same_nodes_as(const Grid& other) const {
    return x_nodes == other.x_nodes && t_nodes == other.t_nodes;
}

}  // namespace slm
