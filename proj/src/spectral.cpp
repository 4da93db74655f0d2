#include "radpauli/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <lapacke.h>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "radpauli/errors.hpp"

namespace radpauli {
namespace {

constexpr double kResidualTol = 1e-9;

// D^{-1/2} K D^{-1/2}: still symmetric tridiagonal.
struct SymTridiag {
    std::vector<double> d, e, scale;  // scale_i = M_i^{-1/2}
    double norm = 0.0;                // infinity norm
};

SymTridiag symmetrize(const ModeOperator& op) {
    const std::size_t n = op.size();
    if (n == 0) throw DomainError("empty operator");
    SymTridiag s;
    s.d.resize(n);
    s.e.resize(n > 1 ? n - 1 : 0);
    s.scale.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(op.mass[i] > 0.0)) throw DomainError("mass must be positive");
        s.scale[i] = 1.0 / std::sqrt(op.mass[i]);
    }
    for (std::size_t i = 0; i < n; ++i) s.d[i] = op.diag[i] * s.scale[i] * s.scale[i];
    for (std::size_t i = 0; i + 1 < n; ++i) s.e[i] = op.off[i] * s.scale[i] * s.scale[i + 1];
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(s.d[i]);
        if (i > 0) row += std::abs(s.e[i - 1]);
        if (i + 1 < n) row += std::abs(s.e[i]);
        s.norm = std::max(s.norm, row);
    }
    return s;
}

double gershgorin_lower(const SymTridiag& s) {
    double lo = std::numeric_limits<double>::infinity();
    const std::size_t n = s.d.size();
    for (std::size_t i = 0; i < n; ++i) {
        double rad = 0.0;
        if (i > 0) rad += std::abs(s.e[i - 1]);
        if (i + 1 < n) rad += std::abs(s.e[i]);
        lo = std::min(lo, s.d[i] - rad);
    }
    return lo;
}

double residual(const SymTridiag& s, const double* y, double lambda) {
    const std::size_t n = s.d.size();
    double r2 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = s.d[i] * y[i] - lambda * y[i];
        if (i > 0) v += s.e[i - 1] * y[i - 1];
        if (i + 1 < n) v += s.e[i] * y[i + 1];
        r2 += v * v;
        y2 += y[i] * y[i];
    }
    return std::sqrt(r2 / y2) / std::max(1.0, s.norm);
}

// dstevr over a value range (vl, vu] or an index range [il, iu] (1-based).
struct Stevr {
    std::vector<double> w;
    std::vector<double> z;  // column-major n x m
    int m = 0;
};

Stevr stevr(SymTridiag s, bool vectors, char range, double vl, double vu, int il, int iu) {
    const int n = static_cast<int>(s.d.size());
    Stevr out;
    out.w.assign(n, 0.0);
    if (vectors) out.z.assign(static_cast<std::size_t>(n) * std::max(1, range == 'I' ? iu - il + 1 : n), 0.0);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
    std::vector<double> e = s.e;
    e.push_back(0.0);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', range, n, s.d.data(), e.data(), vl,
                                           vu, il, iu, 0.0, &m, out.w.data(), vectors ? out.z.data() : nullptr,
                                           n, isuppz.data());
    if (info != 0) throw NumericalError("tridiagonal eigensolver failed (info " + std::to_string(info) + ")");
    out.m = m;
    out.w.resize(m);
    return out;
}

}  // namespace

Spectrum eigen_negative(const ModeOperator& op, int k_max) {
    const SymTridiag s = symmetrize(op);
    Spectrum spec;
    spec.grid_size = op.size();
    const double lo = gershgorin_lower(s);
    if (lo >= 0.0) return spec;
    const Stevr r = stevr(s, true, 'V', lo - 1.0 - std::abs(lo) * 1e-12, 0.0, 0, 0);
    const std::size_t n = op.size();
    for (int j = 0; j < r.m; ++j) {
        if (!(r.w[j] < 0.0)) continue;
        if (k_max > 0 && static_cast<int>(spec.eigenvalues.size()) >= k_max) break;
        const double res = residual(s, r.z.data() + static_cast<std::size_t>(j) * n, r.w[j]);
        if (res > kResidualTol)
            throw NumericalError("eigenpair residual " + std::to_string(res) + " above tolerance");
        spec.eigenvalues.push_back(r.w[j]);
        spec.residuals.push_back(res);
    }
    spec.count_negative = spec.eigenvalues.size();
    return spec;
}

double lowest_eigenvalue(const ModeOperator& op) {
    const SymTridiag s = symmetrize(op);
    const Stevr r = stevr(s, true, 'I', 0.0, 0.0, 1, 1);
    if (r.m != 1) throw NumericalError("lowest eigenvalue not found");
    const double res = residual(s, r.z.data(), r.w[0]);
    if (res > kResidualTol) throw NumericalError("lowest eigenpair residual " + std::to_string(res) + " above tolerance");
    return r.w[0];
}

std::vector<double> eigenvalues_all(const ModeOperator& op) {
    const SymTridiag s = symmetrize(op);
    return stevr(s, false, 'A', 0.0, 0.0, 0, 0).w;
}

EigenSystem eigen_all(const ModeOperator& op) {
    const SymTridiag s = symmetrize(op);
    const Stevr r = stevr(s, true, 'A', 0.0, 0.0, 0, 0);
    const std::size_t n = op.size();
    EigenSystem es;
    es.values = r.w;
    es.vectors.resize(r.m);
    for (int j = 0; j < r.m; ++j) {
        const double* y = r.z.data() + static_cast<std::size_t>(j) * n;
        es.vectors[j].resize(n);
        for (std::size_t i = 0; i < n; ++i) es.vectors[j][i] = y[i] * s.scale[i];
    }
    return es;
}

std::vector<double> solve_shifted(const ModeOperator& op, double shift, const std::vector<double>& rhs) {
    const std::size_t n = op.size();
    if (rhs.size() != n) throw DomainError("right-hand side does not match operator");
    std::vector<double> c(n), d(n);
    double piv = op.diag[0] + shift * op.mass[0];
    if (!(piv > 0.0)) throw NumericalError("shifted operator is not positive definite");
    c[0] = n > 1 ? op.off[0] / piv : 0.0;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = op.diag[i] + shift * op.mass[i] - op.off[i - 1] * c[i - 1];
        if (!(piv > 0.0)) throw NumericalError("shifted operator is not positive definite");
        c[i] = i + 1 < n ? op.off[i] / piv : 0.0;
        d[i] = (rhs[i] - op.off[i - 1] * d[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

std::vector<double> resolvent_column(const ModeOperator& op, double kappa, std::size_t j) {
    if (j >= op.size()) throw DomainError("column index out of range");
    std::vector<double> e(op.size(), 0.0);
    e[j] = 1.0;
    return solve_shifted(op, kappa * kappa, e);
}

double riesz_sum(const std::vector<double>& eigenvalues, double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("Riesz exponent must be nonnegative");
    double s = 0.0;
    for (double e : eigenvalues)
        if (e < 0.0) s += gamma == 0.0 ? 1.0 : std::pow(-e, gamma);
    return s;
}

RieszMean riesz_mean(const Spectrum& spec, double gamma) { return {gamma, riesz_sum(spec.eigenvalues, gamma)}; }

HeatKernelOrigin::HeatKernelOrigin(const ModeOperator& op) {
    if (op.m != 0) throw DomainError("heat kernel at the origin needs the m = 0 operator");
    if (op.size() < 8) throw DomainError("heat kernel needs at least eight free nodes");
    const EigenSystem es = eigen_all(op);
    const double r1 = op.r[0], r2 = op.r[1], r3 = op.r[2];
    // quadratic Lagrange extrapolation to r = 0
    const double l1 = r2 * r3 / ((r1 - r2) * (r1 - r3));
    const double l2 = r1 * r3 / ((r2 - r1) * (r2 - r3));
    const double l3 = r1 * r2 / ((r3 - r1) * (r3 - r2));
    lambda_ = es.values;
    u0sq_.resize(lambda_.size());
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
        const auto& u = es.vectors[k];
        const double u0 = l1 * u[0] + l2 * u[1] + l3 * u[2];
        u0sq_[k] = u0 * u0;
    }
    // Small times: every element within 3 sqrt(t) of the origin must be
    // shorter than sqrt(t)/10. Large times: the Dirichlet wall stays 8 sqrt(t) away.
    const double r_wall = op.r.back();
    window_.t_max = (r_wall / 8.0) * (r_wall / 8.0);
    double t_min = 0.0;
    for (std::size_t e = 0; e + 1 < op.r.size(); ++e) {
        const double h = op.r[e + 1] - op.r[e];
        if (10.0 * h > op.r[e] / 3.0) t_min = std::max(t_min, 100.0 * h * h);
    }
    window_.t_min = t_min;
    if (!(window_.t_min < window_.t_max)) throw ContractError("grid too coarse: empty trusted heat-kernel window");
}

double HeatKernelOrigin::unchecked(double t) const {
    double s = 0.0;
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
        const double x = t * lambda_[k];
        if (x > 745.0) continue;
        s += std::exp(-x) * u0sq_[k];
    }
    return s / (2.0 * std::numbers::pi);
}

double HeatKernelOrigin::operator()(double t) const {
    if (!(t >= window_.t_min && t <= window_.t_max))
        throw ContractError("t outside trusted window [" + std::to_string(window_.t_min) + ", " +
                            std::to_string(window_.t_max) + "]");
    return unchecked(t);
}

double heat_diag_origin(const ModeOperator& op, double t) { return HeatKernelOrigin(op)(t); }

double lieb_constant(double a, double gamma) {
    if (!(a > 0.0)) throw DomainError("lieb_constant needs a > 0");
    if (!(gamma > 0.0)) throw DomainError("lieb_constant needs gamma > 0");
    const double den = std::exp(-a) - a * boost::math::expint(1, a);
    if (!(den > 1e-300)) throw DomainError("a too large: denominator of K_{a,gamma} vanishes");
    return boost::math::tgamma(gamma + 1.0) / den;
}

}  // namespace radpauli
