#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace radpauli {

enum class FieldKind { Zero, Gaussian, CompactBump, PowerTail, AcCircle };

std::string_view to_string(FieldKind k);
FieldKind field_kind_from_string(std::string_view s);

// Radial magnetic field. For AcCircle the field is the measure (alpha/R) on
// the circle |x| = R and `amplitude` is ignored in favour of `alpha`.
//   gaussian      B(r) = amplitude * exp(-(r/R)^2)
//   compact-bump  B(r) = amplitude * (1 - (r/R)^2)^2 for r < R, else 0
//   power-tail    B(r) = amplitude * (1 + r/R)^(-decay), decay > 2
struct FieldProfile {
    FieldKind kind = FieldKind::Zero;
    double amplitude = 0.0;
    double scale = 1.0;
    double decay = 3.0;
    double alpha = 0.0;

    static FieldProfile zero();
    static FieldProfile gaussian(double amplitude, double scale = 1.0);
    static FieldProfile compact_bump(double amplitude, double scale = 1.0);
    static FieldProfile power_tail(double amplitude, double scale, double decay);
    static FieldProfile ac_circle(double alpha, double scale = 1.0);
    // Gaussian with prescribed flux.
    static FieldProfile gaussian_with_flux(double alpha, double scale = 1.0);

    double field(double r) const;
    FieldProfile negated() const;
};

// (1/2pi) \int B dx = \int_0^inf B(r) r dr.
double flux_alpha(const FieldProfile& p);

// Angular average of the logarithmic potential:
// h(r) = \int_0^inf B(s) ln(max(r,s)) s ds.
double potential_h(const FieldProfile& p, double r);

// h at many radii (must be sorted ascending); cumulative quadrature, O(n).
std::vector<double> potential_h_sorted(const FieldProfile& p, std::span<const double> r);

// h tabulated out to r_max together with its logarithmic asymptote
// h(r) ~ alpha ln r + c_fit and the bounds m^{+/-}.
struct PotentialH {
    FieldProfile profile;
    std::vector<double> r;
    std::vector<double> h;
    double alpha = 0.0;
    double c_fit = 0.0;
    double h0 = 0.0;
    double m_plus = 1.0;
    double m_minus = 1.0;
};

PotentialH tabulate_h(const FieldProfile& p, double r_max = 1e6, int points_per_decade = 40);

struct SupBounds {
    double m_plus;
    double m_minus;
};

// m^{+/-} = sup e^{+/-h(r)} / (1 + r/R)^{+/-alpha}, including the r -> inf limit.
// Throws ContractError if the deviation h - alpha ln(1+r/R) keeps drifting
// at the truncation radius.
SupBounds sup_bounds_m(const FieldProfile& p, double r_max = 1e6);

struct AsymptoteFit {
    double alpha;
    double residual;
    bool poor_fit;
};

// Least-squares slope of h against ln(1 + r/R) over the outer decade of the table.
AsymptoteFit alpha_from_h_asymptote(const PotentialH& h);

// B~(r) = R^2 B(R r), R~ = 1.
FieldProfile rescale_to_unit_R(const FieldProfile& p);

// h0 per the main bound: h(0) for continuous profiles, 0 for the circle.
double h_origin(const FieldProfile& p);

}  // namespace radpauli
