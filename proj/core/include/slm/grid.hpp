#pragma once

#include <vector>

namespace slm {

enum class GridSpacing { Uniform, LogUniform };

// Space-time grid on [0, x_max] x [0, T]. x_nodes[0] == 0 and
// x_nodes.back() == x_max always hold; LogUniform places a uniform patch on
// [0, 1] and log-spaced nodes on [1, x_max] with matched spacing at 1, which
// resolves the absorbing boundary and the far field at the same cost.
struct Grid {
    std::vector<double> x_nodes;
    std::vector<double> t_nodes;
    GridSpacing spacing = GridSpacing::Uniform;

    static Grid uniform(double x_max, int n_x, double T, int n_t);
    static Grid log_uniform(double x_max, int n_x, double T, int n_t);

    double x_max() const { return x_nodes.back(); }
    double horizon() const { return t_nodes.back(); }
    int nx() const { return static_cast<int>(x_nodes.size()); }
    int nt() const { return static_cast<int>(t_nodes.size()); }

    // Index of the node equal to x within tolerance, or -1.
    int index_of_x(double x, double tol = 1e-12) const;

    bool same_nodes_as(const Grid& other) const;
};

}  // namespace slm
