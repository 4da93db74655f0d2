#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/verify.hpp"

namespace radpauli {
namespace {

// \int_a^b f(r) dr in the variable u = ln r, on unit u-panels.
template <class F>
double log_integral(F f, double a, double b) {
    const double ua = std::log(a), ub = std::log(b);
    const int panels = std::max(1, static_cast<int>(std::ceil(ub - ua)));
    const double du = (ub - ua) / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i)
        s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double u) {
                const double r = std::exp(u);
                return f(r) * r;
            },
            ua + i * du, ua + (i + 1) * du, 10, 1e-13);
    return s;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs at least two points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw DomainError("log-log fit needs distinct abscissae");
    FitResult f;
    f.exponent = (n * sxy - sx * sy) / den;
    const double icpt = (sy - f.exponent * sx) / n;
    f.prefactor = std::exp(icpt);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::log(y[i]) - (f.exponent * std::log(x[i]) + icpt);
        ss += d * d;
    }
    f.residual = std::sqrt(ss / n);
    f.x = x;
    f.y = y;
    return f;
}

// ---------------------------------------------------------------- weak coupling

double weak_coupling_constant(const FieldProfile& profile, const RadialPotential& v) {
    const double alpha = flux_alpha(profile);
    const double a = std::abs(alpha);
    if (!(a > 0.0 && a < 1.0)) throw DomainError("weak coupling constant needs 0 < |alpha| < 1");
    const double s = sgn(alpha);
    const double integral = -integrate_radial(v, [&](double r) {
        const double x = v(r);
        return x == 0.0 ? 0.0 : x * std::exp(-2.0 * s * potential_h(profile, r));
    });
    return std::pow(4.0, a - 1.0) * boost::math::tgamma(a) / (std::numbers::pi * boost::math::tgamma(1.0 - a)) *
           integral;
}

WeakCoupling weak_coupling_fit(const FieldProfile& profile, const RadialPotential& v,
                               const std::vector<double>& lambdas, const WeakCouplingOptions& opt) {
    const double alpha = flux_alpha(profile);
    const double a = std::abs(alpha);
    if (!(a > 0.0 && a < 1.0)) throw DomainError("weak coupling fit needs 0 < |alpha| < 1");
    if (lambdas.size() < 2) throw DomainError("weak coupling fit needs at least two couplings");
    WeakCoupling out;
    out.c_predicted = weak_coupling_constant(profile, v);
    if (!(out.c_predicted > 0.0)) throw ContractError("weak coupling needs a negative weighted integral of v");
    std::vector<double> energies;
    const bool circle = profile.kind == FieldKind::AcCircle && profile.scale == 1.0 && alpha > 0.0;
    out.birman_schwinger = circle;
    if (circle) {
        for (double lam : lambdas) {
            const RadialPotential vl = v.scaled(lam);
            const BsResult bs = birman_schwinger_kappa(a, vl.fn, v.support, opt.bs);
            if (!bs.bound) throw ContractError("no bound state at lambda = " + std::to_string(lam));
            energies.push_back(bs.kappa * bs.kappa);
        }
    } else {
        const RadialGrid grid = make_grid_h0(opt.r_max, opt.h0, opt.grading);
        const int spin = alpha > 0.0 ? kLower : kUpper;
        const WeightTable w = weight_table(grid, WeightKind::ExactH, alpha, spin, &profile);
        for (double lam : lambdas) {
            const RadialPotential vl = v.scaled(lam);
            const double e = lowest_eigenvalue(assemble_mode(grid, w, 0, Form::Chiral, sample_midpoints(grid, vl.fn)));
            if (!(e < 0.0)) throw ContractError("no bound state at lambda = " + std::to_string(lam));
            energies.push_back(-e);
        }
    }
    out.fit = loglog_fit(lambdas, energies);
    double mean = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) mean += a * std::log(energies[i]) - std::log(lambdas[i]);
    out.c_fit = std::exp(mean / lambdas.size());
    return out;
}

// ---------------------------------------------------------------- one-term failure

double one_term_rate(double alpha, FailureFamily which) {
    return which == FailureFamily::Semiclassical ? 2.0 * alpha * alpha / (1.0 + alpha) : 2.0 * alpha;
}

std::vector<double> default_failure_params(FailureFamily which) {
    return which == FailureFamily::Semiclassical ? log_space(1e-8, 1e-4, 6) : log_space(1e2, 1e6, 6);
}

double one_term_quotient(double alpha, FailureFamily which, double param) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("one-term failure needs 0 < alpha < 1");
    if (!(param > 0.0)) throw DomainError("family parameter must be positive");
    const double k = param;  // phi(r) = exp(-(k r)^2)
    auto phi = [k](double r) { return std::exp(-(k * r) * (k * r)); };
    auto dphi = [&](double r) { return -2.0 * k * k * r * phi(r); };
    const double lo = 1e-12 / k, hi = 8.0 / k;
    const double w = -2.0 * alpha;
    const double i1 = log_integral([&](double r) { return std::pow(1.0 + r, w) * dphi(r) * dphi(r) * r; }, lo, hi);
    const double i2 = log_integral([&](double r) { return std::pow(1.0 + r, w) * phi(r) * phi(r) * r; }, lo, hi);
    if (which == FailureFamily::Semiclassical) {
        const double p = 2.0 * (1.0 + alpha) / alpha;
        const double i3 = log_integral(
            [&](double r) { return std::pow(1.0 + r, -2.0 * (1.0 + alpha)) * std::pow(phi(r), p) * r; }, lo, hi);
        const double e = alpha / (1.0 + alpha);
        return std::pow(i1, 1.0 / (1.0 + alpha)) * std::pow(i2, e) / std::pow(i3, e);
    }
    return std::pow(i1, 1.0 - alpha) * std::pow(i2, alpha);  // sup |phi|^2 = phi(0)^2 = 1
}

FitResult one_term_failure(double alpha, FailureFamily which, const std::vector<double>& params) {
    std::vector<double> q;
    for (double p : params) q.push_back(one_term_quotient(alpha, which, p));
    FitResult f = loglog_fit(params, q);
    // Decay exponent in the small parameter: eps itself, or 1/M.
    if (which == FailureFamily::Weak) f.exponent = -f.exponent;
    return f;
}

// ---------------------------------------------------------------- counterexample

double counterexample_ratio_direct(double alpha, double R) {
    if (!(R > 0.0)) throw DomainError("counterexample radius must be positive");
    // phi = r inside, R^2 / r outside, in the m = -1 mode.
    auto phi = [R](double r) { return r <= R ? r : R * R / r; };
    auto dphi = [R](double r) { return r <= R ? 1.0 : -R * R / (r * r); };
    auto w = [alpha](double r) { return std::pow(1.0 + r, -2.0 * alpha); };
    const int m = -1;
    auto chiral = [&](double r) {
        const double g = dphi(r) + m * phi(r) / r;
        return w(r) * g * g * r;
    };
    auto grad = [&](double r) {
        const double f = phi(r), g = dphi(r);
        return w(r) * (g * g + m * m * f * f / (r * r)) * r;
    };
    const double tail = R * std::exp(60.0);
    const double num = log_integral(chiral, 1e-12 * R, R) + log_integral(chiral, R, tail);
    const double den = log_integral(grad, 1e-12 * R, R) + log_integral(grad, R, tail);
    return num / den;
}

FitResult counterexample_ratio(double alpha, const std::vector<double>& Rs) {
    if (!(alpha >= 1.0)) throw DomainError("counterexample requires alpha >= 1");
    std::vector<double> ratios;
    for (double R : Rs) ratios.push_back(counterexample_ratio_direct(alpha, R));
    return loglog_fit(Rs, ratios);
}

// ---------------------------------------------------------------- Lieb's bound

LiebRhs lieb_rhs(double alpha, double gamma, double a, const RadialPotential& v, double c_alpha) {
    if (!(gamma > alpha)) throw DomainError("Lieb's two-term bound needs gamma > alpha");
    const double K = lieb_constant(a, gamma);
    const double i1 = integrate_radial(v, [&](double r) { return std::pow(v.minus(r), gamma + 1.0); });
    const double i2 = integrate_radial(
        v, [&](double r) { return std::pow(1.0 + r, -2.0 * alpha) * std::pow(v.minus(r), 1.0 + gamma - alpha); });
    const double g2 = gamma - alpha;
    return {c_alpha * K / (std::pow(a, gamma) * gamma * (gamma + 1.0)) * i1,
            c_alpha * K / (std::pow(a, g2) * g2 * (g2 + 1.0)) * i2};
}

double heat_envelope_constant(const HeatKernelOrigin& p, double alpha) {
    const HeatWindow w = p.window();
    double c = 0.0;
    for (double t : log_space(w.t_min, w.t_max, 8)) c = std::max(c, p(t) / (1.0 / t + std::pow(t, alpha - 1.0)));
    return c;
}

double heat_slope(const HeatKernelOrigin& p, double t_lo, double t_hi, int per_decade) {
    std::vector<double> t = log_space(t_lo, t_hi, per_decade), y;
    for (double x : t) y.push_back(p(x));
    return loglog_fit(t, y).exponent;
}

}  // namespace radpauli
