#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace radpauli {

// Nodes r_1 < ... < r_N = r_max on (0, r_max]. The interval (0, r_1) is not
// meshed; forms with a natural boundary condition treat r_1 as the origin.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> weight;  // trapezoid weights, sum = r_max - r_1
    std::optional<std::size_t> one;

    std::size_t size() const { return r.size(); }
    double r_max() const { return r.back(); }
    bool contains_one() const { return one.has_value(); }
    double spacing(std::size_t e) const { return r[e + 1] - r[e]; }
    double max_relative_spacing() const;

    // Every element split at its midpoint; keeps all existing nodes.
    RadialGrid refined() const;
};

// Geometric grading g = ratio of consecutive spacings, remapped piecewise so
// that r = 1 is a node. g == 1 gives (piecewise) uniform spacing.
RadialGrid make_grid(double r_max, int n, double grading);

RadialGrid grid_from_nodes(std::vector<double> nodes);

// Graded grid specified by its smallest spacing h0 and grading g; the node
// count follows from r_max. Convenient for long domains.
RadialGrid make_grid_h0(double r_max, double h0, double grading);

}  // namespace radpauli
