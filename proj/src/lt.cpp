#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/verify.hpp"

namespace radpauli {

RadialPotential RadialPotential::zero() { return {[](double) { return 0.0; }, 0.0, {}}; }

RadialPotential RadialPotential::gaussian_well(double depth, double width) {
    if (!(width > 0.0)) throw DomainError("well width must be positive");
    return {[=](double r) { return -depth * std::exp(-(r / width) * (r / width)); }, 10.0 * width, {}};
}

RadialPotential RadialPotential::step_well(double depth, double radius) {
    if (!(radius > 0.0)) throw DomainError("well radius must be positive");
    return {[=](double r) { return r <= radius ? -depth : 0.0; }, radius, {radius}};
}

double RadialPotential::minus(double r) const { return std::max(0.0, -(*this)(r)); }

RadialPotential RadialPotential::scaled(double lambda) const {
    RadialPotential out = *this;
    const RadialFn f = fn;
    out.fn = [f, lambda](double r) { return f ? lambda * f(r) : 0.0; };
    return out;
}

double integrate_radial(const RadialPotential& v, const RadialFn& f) {
    if (!(v.support > 0.0)) return 0.0;
    std::vector<double> cuts{0.0};
    for (double b : v.breakpoints)
        if (b > 0.0 && b < v.support) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(v.support);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double r) { return f(r) * r; }, cuts[i], cuts[i + 1], 15, 1e-12);
    return 2.0 * std::numbers::pi * s;
}

namespace {

std::vector<double> riesz_all(const Spectrum& s, const std::vector<double>& gammas) {
    std::vector<double> out(gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) out[k] = riesz_sum(s.eigenvalues, gammas[k]);
    return out;
}

void add_to(std::vector<double>& acc, const std::vector<double>& x, double factor = 1.0) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += factor * x[k];
}

}  // namespace

ModeSum mode_riesz_sums(const RadialGrid& grid, const FieldProfile& profile, const RadialPotential& v,
                        const std::vector<double>& gammas, const LTOptions& opt) {
    const std::size_t ng = gammas.size();
    ModeSum out;
    out.plus.assign(ng, 0.0);
    out.minus.assign(ng, 0.0);
    const std::vector<double> v_mid = sample_midpoints(grid, v.fn);
    const bool exact = opt.weight == WeightKind::ExactH;
    const Form form = exact ? Form::Chiral : Form::Expanded;
    const double alpha = flux_alpha(profile);

    std::vector<int> spins;
    if (opt.spin_plus) spins.push_back(kUpper);
    if (opt.spin_minus) spins.push_back(kLower);
    std::vector<WeightTable> tables;
    for (int s : spins) tables.push_back(weight_table(grid, opt.weight, alpha, s, exact ? &profile : nullptr));

    auto mode = [&](std::size_t i, int m) {
        return riesz_all(eigen_negative(assemble_mode(grid, tables[i], m, form, v_mid)), gammas);
    };
    auto target = [&](std::size_t i) -> std::vector<double>& { return spins[i] == kUpper ? out.plus : out.minus; };

    for (std::size_t i = 0; i < spins.size(); ++i) add_to(target(i), mode(i, 0));
    for (int M = 1;; ++M) {
        std::vector<double> shell(ng, 0.0);
        for (std::size_t i = 0; i < spins.size(); ++i) {
            std::vector<double> contrib(ng, 0.0);
            if (exact) {
                add_to(contrib, mode(i, M));
                add_to(contrib, mode(i, -M));
            } else {
                add_to(contrib, mode(i, M), 2.0);  // expanded forms do not see the sign of m
            }
            add_to(target(i), contrib);
            add_to(shell, contrib);
        }
        out.modes = M;
        bool small = true;
        for (std::size_t k = 0; k < ng; ++k) {
            const double total = out.plus[k] + out.minus[k];
            if (shell[k] > opt.mode_tol * total) small = false;
        }
        if (small && M >= opt.min_modes) break;
        if (M >= opt.max_modes) throw NumericalError("mode sum did not converge within max_modes");
    }
    return out;
}

std::vector<LTReport> lt_report(const FieldProfile& profile, const RadialPotential& v,
                                const std::vector<double>& gammas, const LTOptions& opt) {
    const double alpha = flux_alpha(profile);
    const double a = std::abs(alpha);
    for (double g : gammas) {
        if (!(g > 0.0)) throw DomainError("Lieb-Thirring exponent must be positive");
        if (g < a - 1e-12)
            throw DomainError("below critical exponent: gamma < |alpha| admits no bound of this form");
    }
    const RadialGrid grid = make_grid_h0(opt.r_max, opt.h0, opt.grading);
    const ModeSum sums = mode_riesz_sums(grid, profile, v, gammas, opt);

    const double h0 = h_origin(profile);
    const double sgn = alpha > 0.0 ? 1.0 : (alpha < 0.0 ? -1.0 : 0.0);
    std::vector<LTReport> out;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        const double g = gammas[k];
        LTReport rep;
        rep.alpha = alpha;
        rep.gamma = g;
        rep.lhs_plus = sums.plus[k];
        rep.lhs_minus = sums.minus[k];
        rep.lhs = rep.lhs_plus + rep.lhs_minus;
        rep.modes = sums.modes;
        rep.grid_size = grid.size();
        rep.term1 = integrate_radial(v, [&](double r) { return std::pow(v.minus(r), g + 1.0); });
        rep.term2 = integrate_radial(v, [&](double r) {
            const double vm = v.minus(r);
            if (vm == 0.0) return 0.0;
            const double w = sgn == 0.0 ? 1.0 : std::exp(-2.0 * sgn * (potential_h(profile, r) - h0));
            return w * std::pow(vm, g + 1.0 - a);
        });
        const double rhs = rep.term1 + rep.term2;
        rep.ratio = rhs > 0.0 ? rep.lhs / rhs : 0.0;
        out.push_back(rep);
    }
    return out;
}

LTReport lt_report(const FieldProfile& profile, const RadialPotential& v, double gamma, const LTOptions& opt) {
    return lt_report(profile, v, std::vector<double>{gamma}, opt).front();
}

LTConstants fit_lt_constants(const std::vector<LTReport>& battery) {
    struct Row {
        double t1, t2, lhs;
    };
    std::vector<Row> rows;
    for (const auto& r : battery)
        if (r.lhs > 0.0) rows.push_back({r.term1, r.term2, r.lhs});
    LTConstants best;
    if (rows.empty()) {
        best.feasible = true;
        return best;
    }
    auto feasible = [&](double L1, double L2) {
        if (L1 < 0.0 || L2 < 0.0) return false;
        for (const auto& r : rows)
            if (L1 * r.t1 + L2 * r.t2 < r.lhs * (1.0 - 1e-12)) return false;
        return true;
    };
    auto objective = [&](double L1, double L2) {
        double s = 0.0;
        for (const auto& r : rows) s += (L1 * r.t1 + L2 * r.t2) / r.lhs;
        return s / rows.size();
    };
    // Candidate vertices: each constraint on either axis, and pairwise intersections.
    std::vector<std::pair<double, double>> cand;
    for (const auto& r : rows) {
        if (r.t1 > 0.0) cand.emplace_back(r.lhs / r.t1, 0.0);
        if (r.t2 > 0.0) cand.emplace_back(0.0, r.lhs / r.t2);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i].t1 * rows[j].t2 - rows[j].t1 * rows[i].t2;
            if (std::abs(det) < 1e-300) continue;
            const double L1 = (rows[i].lhs * rows[j].t2 - rows[j].lhs * rows[i].t2) / det;
            const double L2 = (rows[i].t1 * rows[j].lhs - rows[j].t1 * rows[i].lhs) / det;
            cand.emplace_back(L1, L2);
        }
    best.objective = std::numeric_limits<double>::infinity();
    for (const auto& [L1, L2] : cand) {
        // Vertices sit exactly on constraints; nudge to absorb rounding.
        const double a = L1 * (1.0 + 1e-12), b = L2 * (1.0 + 1e-12);
        if (!feasible(a, b)) continue;
        const double obj = objective(a, b);
        if (obj < best.objective) best = {a, b, obj, true};
    }
    return best;
}

LTConstants fit_lt_constant_one_term(const std::vector<LTReport>& battery, bool plus_only) {
    LTConstants c;
    c.feasible = true;
    for (const auto& r : battery) {
        const double lhs = plus_only ? r.lhs_plus : r.lhs;
        if (lhs == 0.0) continue;
        if (!(r.term1 > 0.0)) {
            c.feasible = false;
            continue;
        }
        c.L1 = std::max(c.L1, lhs / r.term1);
    }
    return c;
}

double lt_certificate_violation(const std::vector<LTReport>& battery, const LTConstants& c, bool plus_only) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& r : battery) {
        const double lhs = plus_only ? r.lhs_plus : r.lhs;
        if (lhs == 0.0) continue;
        worst = std::max(worst, (lhs - c.L1 * r.term1 - c.L2 * r.term2) / lhs);
    }
    return std::isfinite(worst) ? worst : 0.0;
}

}  // namespace radpauli
