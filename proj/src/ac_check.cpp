#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/verify.hpp"

namespace radpauli {
namespace {

// a(r) = \int_0^r B(s) s ds, the flux through the disc of radius r over 2 pi.
double enclosed_flux(const FieldProfile& p, double r) {
    if (p.kind == FieldKind::Zero) return 0.0;
    if (p.kind == FieldKind::AcCircle) return r > p.scale ? p.alpha : 0.0;
    double end = r;
    if (p.kind == FieldKind::CompactBump) end = std::min(r, p.scale);
    if (p.kind == FieldKind::Gaussian) end = std::min(r, 25.8 * p.scale);
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double s) { return p.field(s) * s; }, 0.0, end, 15, 1e-14);
}

}  // namespace

AcCheck ac_check(const FieldProfile& input, const AcCheckOptions& opt) {
    const FieldProfile profile = rescale_to_unit_R(input);
    const double alpha = flux_alpha(profile);
    if (!(std::abs(alpha) < 1.0)) throw DomainError("Aharonov-Casher check needs |alpha| < 1");
    AcCheck out;
    const RadialGrid grid = make_grid(opt.r_max, opt.n, opt.grading);

    // No zero or negative eigenvalue in either spin block.
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int spin : {kUpper, kLower}) {
        const WeightTable w = weight_table(grid, WeightKind::ExactH, alpha, spin, &profile);
        for (int m = -opt.max_mode; m <= opt.max_mode; ++m)
            out.min_eigenvalue = std::min(out.min_eigenvalue, lowest_eigenvalue(assemble_mode(grid, w, m, Form::Chiral)));
    }

    // In the ground-state representation of the resonant block the resonance is
    // phi = 1; its form vanishes row by row away from the Dirichlet wall.
    const double s = alpha > 0.0 ? 1.0 : (alpha < 0.0 ? -1.0 : 0.0);
    const int spin = s > 0.0 ? kLower : kUpper;
    {
        const ModeOperator op =
            assemble_mode(grid, weight_table(grid, WeightKind::ExactH, alpha, spin, &profile), 0, Form::Chiral);
        const std::vector<double> ones(op.size(), 1.0);
        const std::vector<double> k1 = op.apply(ones);
        double num = 0.0, scale = 0.0;
        for (std::size_t i = 0; i + 1 < op.size(); ++i) {
            num = std::max(num, std::abs(k1[i]));
            scale = std::max(scale, std::abs(op.diag[i]));
        }
        out.form_residual = scale > 0.0 ? num / scale : 0.0;
    }

    // psi = e^{-s(h - h0)} against -psi'' - psi'/r + (a/r)^2 psi + sigma B psi = 0, sigma = -s.
    const double h0 = h_origin(profile);
    const double sigma = -s;
    auto psi = [&](double r) { return std::exp(-s * (potential_h(profile, r) - h0)); };
    const bool circle = profile.kind == FieldKind::AcCircle;
    for (double r : log_space(1e-2, 1e2, 10)) {
        const double d = 1e-3 * r;
        if (circle && std::abs(r - 1.0) < 3.0 * d) continue;
        const double p0 = psi(r), pp = psi(r + d), pm = psi(r - d);
        const double t1 = -(pp - 2.0 * p0 + pm) / (d * d);
        const double t2 = -(pp - pm) / (2.0 * d) / r;
        const double a = enclosed_flux(profile, r);
        const double t3 = (a / r) * (a / r) * p0;
        const double t4 = circle ? 0.0 : sigma * profile.field(r) * p0;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
        if (scale > 0.0) out.resonance_residual = std::max(out.resonance_residual, std::abs(t1 + t2 + t3 + t4) / scale);
    }
    if (circle && alpha != 0.0) {
        // The circle carries B = alpha delta(r - 1): psi' jumps by sigma alpha psi(1).
        const double d = 1e-4, p1 = psi(1.0);
        const double right = (-3.0 * p1 + 4.0 * psi(1.0 + d) - psi(1.0 + 2.0 * d)) / (2.0 * d);
        const double left = (3.0 * p1 - 4.0 * psi(1.0 - d) + psi(1.0 - 2.0 * d)) / (2.0 * d);
        const double expect = sigma * alpha * p1;
        out.jump_residual = std::abs(right - left - expect) / std::abs(expect);
    }
    out.pass = out.min_eigenvalue >= -opt.eig_tol && out.form_residual <= opt.resonance_tol &&
               out.resonance_residual <= opt.resonance_tol && out.jump_residual <= opt.resonance_tol;
    return out;
}

}  // namespace radpauli
