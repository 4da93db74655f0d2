#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "radpauli/field.hpp"
#include "radpauli/grid.hpp"

namespace radpauli {

using RadialFn = std::function<double(double)>;

// Radial weight rho(r); the measure is rho(r) r dr.
//   ExactH     e^{2 s h(r)}           (s = spin, h from a FieldProfile)
//   Model      (1+r)^{2 s alpha}
//   Smooth     (1+r^2)^{s alpha}
//   Canonical  1 on r <= 1, r^{-2 alpha} on r > 1 (spin ignored)
// TAlpha labels the half-line operator with interface term; it has no weight.
enum class WeightKind { ExactH, Model, Smooth, Canonical, TAlpha };

// Expanded: |phi'|^2 + m^2 |phi|^2 / r^2.  Chiral: |phi' - s m phi / r|^2.
enum class Form { Expanded, Chiral };

inline constexpr int kUpper = +1;
inline constexpr int kLower = -1;

// rho sampled at element midpoints and at the three Gauss points per element.
struct WeightTable {
    WeightKind kind = WeightKind::Model;
    double alpha = 0.0;
    int spin = kLower;
    std::vector<double> mid;
    std::vector<std::array<double, 3>> gauss;
};

WeightTable weight_table(const RadialGrid& grid, WeightKind kind, double alpha, int spin,
                         const FieldProfile* profile = nullptr);

// Element midpoint samples of a potential.
std::vector<double> sample_midpoints(const RadialGrid& grid, const RadialFn& v);

// Symmetric tridiagonal stiffness (potential included) and lumped mass on the
// free nodes. Dirichlet at r_max always; at r_1 as well when m != 0.
struct ModeOperator {
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<double> mass;
    std::vector<double> r;
    std::optional<std::size_t> one;

    WeightKind kind = WeightKind::Model;
    Form form = Form::Expanded;
    int m = 0;
    int spin = kLower;
    double alpha = 0.0;

    std::size_t size() const { return diag.size(); }
    double energy(const std::vector<double>& phi) const;  // phi^T K phi
    double norm2(const std::vector<double>& phi) const;   // phi^T M phi
    // K phi
    std::vector<double> apply(const std::vector<double>& phi) const;
};

ModeOperator assemble_mode(const RadialGrid& grid, const WeightTable& w, int m, Form form,
                           const std::vector<double>& v_mid = {});

ModeOperator assemble_mode(const RadialGrid& grid, WeightKind kind, double alpha, int spin, int m,
                           const RadialFn& v = nullptr, Form form = Form::Expanded,
                           const FieldProfile* profile = nullptr);

// m = 0, weight (1+r)^{-2 alpha} r.
ModeOperator assemble_h_minus(const RadialGrid& grid, double alpha, const RadialFn& v = nullptr);

// Quadratic form on L^2(dr):
//   \int|eta'|^2 - alpha|eta(1)|^2 - 1/4 \int_0^1 eta^2/r^2 + (alpha^2-1/4) \int_1^inf eta^2/r^2 + \int v eta^2
// plus eta(r_1)^2/(2 r_1), the boundary term of eta = sqrt(r) phi on [r_1, inf).
ModeOperator assemble_T_alpha(const RadialGrid& grid, double alpha, const RadialFn& v = nullptr);

// Dirichlet condition at r = 1: the node is removed, leaving two decoupled blocks.
std::pair<ModeOperator, ModeOperator> dirichlet_split(const ModeOperator& op);

// Three-point Gauss-Legendre rule on [a, b].
struct Gauss3 {
    std::array<double, 3> x;
    std::array<double, 3> w;
};
Gauss3 gauss3(double a, double b);

// Exact \int_a^b N_i N_j / r^2 dr for the two hat functions on [a, b]:
// returns {aa, ab, bb}.
std::array<double, 3> inverse_square_element(double a, double b);

}  // namespace radpauli
