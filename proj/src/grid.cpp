#include "radpauli/grid.hpp"

#include <algorithm>
#include <cmath>

#include "radpauli/errors.hpp"

namespace radpauli {
namespace {

void fill_weights(RadialGrid& g) {
    const std::size_t n = g.r.size();
    g.weight.assign(n, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double h = g.r[e + 1] - g.r[e];
        g.weight[e] += 0.5 * h;
        g.weight[e + 1] += 0.5 * h;
    }
    g.one.reset();
    for (std::size_t i = 0; i < n; ++i)
        if (g.r[i] == 1.0) g.one = i;
}

}  // namespace

double RadialGrid::max_relative_spacing() const {
    double m = 0.0;
    for (std::size_t e = 0; e + 1 < r.size(); ++e) m = std::max(m, (r[e + 1] - r[e]) / r[e + 1]);
    return m;
}

RadialGrid RadialGrid::refined() const {
    std::vector<double> nodes;
    nodes.reserve(2 * r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) nodes.push_back(0.5 * (r[i - 1] + r[i]));
        nodes.push_back(r[i]);
    }
    RadialGrid g;
    g.r = std::move(nodes);
    fill_weights(g);
    return g;
}

RadialGrid grid_from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 3) throw DomainError("grid needs at least three nodes");
    if (!(nodes.front() > 0.0)) throw DomainError("grid nodes must be positive");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw DomainError("grid nodes must be strictly increasing");
    RadialGrid g;
    g.r = std::move(nodes);
    fill_weights(g);
    return g;
}

RadialGrid make_grid(double r_max, int n, double grading) {
    if (!(r_max > 1.0)) throw DomainError("make_grid needs r_max > 1");
    if (n < 64) throw DomainError("make_grid needs n >= 64");
    if (!(grading >= 1.0)) throw DomainError("make_grid needs grading >= 1");
    // cumulative positions c_i, i = 0..n, of spacings g^i
    std::vector<double> c(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) c[i] = c[i - 1] + std::pow(grading, i - 1);
    const double s = r_max / c[n];
    int k = 1;
    double best = std::abs(s * c[1] - 1.0);
    for (int i = 2; i < n; ++i) {
        const double d = std::abs(s * c[i] - 1.0);
        if (d < best) best = d, k = i;
    }
    std::vector<double> nodes(n);
    for (int i = 1; i <= k; ++i) nodes[i - 1] = c[i] / c[k];
    for (int i = k + 1; i <= n; ++i) nodes[i - 1] = 1.0 + (c[i] - c[k]) / (c[n] - c[k]) * (r_max - 1.0);
    nodes[k - 1] = 1.0;
    nodes[n - 1] = r_max;
    return grid_from_nodes(std::move(nodes));
}

RadialGrid make_grid_h0(double r_max, double h0, double grading) {
    if (!(h0 > 0.0) || !(grading > 1.0)) throw DomainError("make_grid_h0 needs h0 > 0 and grading > 1");
    const double n = std::log1p(r_max * (grading - 1.0) / h0) / std::log(grading);
    return make_grid(r_max, std::max(64, static_cast<int>(std::ceil(n))), grading);
}

}  // namespace radpauli
