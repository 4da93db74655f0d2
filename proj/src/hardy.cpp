#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <lapacke.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/verify.hpp"

namespace radpauli {
namespace {

// Smallest eigenvalue of the tridiagonal pencil (A, B), B positive definite.
double min_generalized(const ModeOperator& A, const ModeOperator& B) {
    const lapack_int n = static_cast<lapack_int>(A.size());
    if (B.size() != A.size()) throw DomainError("pencil sizes differ");
    std::vector<double> ab(2 * n, 0.0), bb(2 * n, 0.0), w(n);
    for (lapack_int j = 0; j < n; ++j) {
        ab[1 + 2 * j] = A.diag[j];
        bb[1 + 2 * j] = B.diag[j];
        if (j > 0) {
            ab[2 * j] = A.off[j - 1];
            bb[2 * j] = B.off[j - 1];
        }
    }
    const lapack_int info =
        LAPACKE_dsbgv(LAPACK_COL_MAJOR, 'N', 'U', n, 1, 1, ab.data(), 2, bb.data(), 2, w.data(), nullptr, 1);
    if (info != 0) throw NumericalError("banded generalized eigensolver failed (info " + std::to_string(info) + ")");
    return *std::min_element(w.begin(), w.end());
}

// \int [(psi' + c(r) psi)^2 + m^2 psi^2 / r^2] r dr on the free nodes of mode m.
ModeOperator first_order_form(const RadialGrid& grid, int m, const RadialFn& c) {
    ModeOperator op = assemble_mode(grid, WeightKind::Model, 0.0, kLower, m);
    std::fill(op.diag.begin(), op.diag.end(), 0.0);
    std::fill(op.off.begin(), op.off.end(), 0.0);
    const std::size_t lo = m == 0 ? 0 : 1, hi = grid.size() - 1;
    const double m2 = static_cast<double>(m) * m;
    for (std::size_t e = 0; e + 1 < grid.size(); ++e) {
        const double a = grid.r[e], b = grid.r[e + 1], h = b - a;
        const Gauss3 q = gauss3(a, b);
        double kaa = 0, kab = 0, kbb = 0;
        for (int k = 0; k < 3; ++k) {
            const double r = q.x[k], W = q.w[k] * r, cr = c(r);
            const double na = (b - r) / h, nb = (r - a) / h;
            const double ga = -1.0 / h + cr * na, gb = 1.0 / h + cr * nb;
            const double s = m2 / (r * r);
            kaa += W * (ga * ga + s * na * na);
            kab += W * (ga * gb + s * na * nb);
            kbb += W * (gb * gb + s * nb * nb);
        }
        const bool af = e >= lo && e < hi, bf = e + 1 >= lo && e + 1 < hi;
        if (af) op.diag[e - lo] += kaa;
        if (bf) op.diag[e + 1 - lo] += kbb;
        if (af && bf) op.off[e - lo] += kab;
    }
    return op;
}

}  // namespace

double q_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("q_alpha needs 0 <= alpha < 1");
    const double t = std::pow(2.0, -2.0 * alpha - 1.0) * (1.0 - alpha) * (1.0 - alpha);
    return t / (2.0 * alpha + t);
}

double theta_formula(double alpha) { return 4.0 * (alpha + 1.0) / (5.0 * alpha + 4.0); }

double hardy_q_estimate(double alpha, int sign, int m, const RadialGrid& grid) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("hardy_q_estimate needs 0 <= alpha < 1");
    const WeightTable w = weight_table(grid, WeightKind::Model, alpha, sign);
    return min_generalized(assemble_mode(grid, w, m, Form::Chiral), assemble_mode(grid, w, m, Form::Expanded));
}

Hardy1D hardy_1d_constant(const RadialFn& U, const RadialFn& W, HardyPart part, double t_lo, double t_hi) {
    if (!(t_lo > 0.0 && t_hi > t_lo * 1e4)) throw DomainError("invalid Hardy integration range");
    constexpr int per_decade = 20;
    const int n = static_cast<int>(std::lround(std::log10(t_hi / t_lo) * per_decade));
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / n);
    auto uinv = [&](double x) {
        const double u = U(x);
        return u > 0.0 ? 1.0 / u : std::numeric_limits<double>::infinity();
    };
    // Segment integrals in the logarithmic variable.
    auto seg = [&](const auto& f, double a, double b) {
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double u) {
                const double x = std::exp(u);
                return f(x) * x;
            },
            std::log(a), std::log(b), 10, 1e-12);
    };
    std::vector<double> su(n), sw(n);
    for (int i = 0; i < n; ++i) {
        su[i] = seg(uinv, t[i], t[i + 1]);
        sw[i] = seg(W, t[i], t[i + 1]);
    }
    double tot_u = 0.0, tot_w = 0.0;
    for (int i = 0; i < n; ++i) tot_u += su[i], tot_w += sw[i];
    Hardy1D out;
    // An integral reaching an open end is divergent when its log-density there
    // is not negligible against the bulk.
    auto open_end_ok = [](double density, double total) {
        return std::isfinite(density) && std::isfinite(total) && density <= 1e-6 * total;
    };
    const bool u_tail_hi = part == HardyPart::A;  // which end each integral touches
    const double du = u_tail_hi ? uinv(t_hi) * t_hi : uinv(t_lo) * t_lo;
    const double dw = u_tail_hi ? W(t_lo) * t_lo : W(t_hi) * t_hi;
    if (!open_end_ok(du, tot_u) || !open_end_ok(dw, tot_w)) {
        out.finite = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    // Prefix sums \int_{t_lo}^{t_i} and suffix sums \int_{t_i}^{t_hi}, each
    // accumulated from its own open end so that neither cancels.
    std::vector<double> pre_u(n + 1, 0.0), pre_w(n + 1, 0.0), suf_u(n + 1, 0.0), suf_w(n + 1, 0.0);
    for (int i = 0; i < n; ++i) pre_u[i + 1] = pre_u[i] + su[i], pre_w[i + 1] = pre_w[i] + sw[i];
    for (int i = n; i-- > 0;) suf_u[i] = suf_u[i + 1] + su[i], suf_w[i] = suf_w[i + 1] + sw[i];
    double best = 0.0;
    for (int i = 2 * per_decade; i <= n - 2 * per_decade; ++i) {
        const double p = part == HardyPart::A ? suf_u[i] * pre_w[i] : pre_u[i] * suf_w[i];
        if (p > best) best = p, out.s_at_sup = t[i];
    }
    out.value = 4.0 * best;
    return out;
}

OffRadial offradial_bound_check(double alpha, const RadialGrid& grid) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("off-radial check needs 0 <= alpha < 1");
    OffRadial out{std::numeric_limits<double>::infinity(), 0};
    for (int m : {1, -1, 2, -2, 3, -3}) {
        const ModeOperator num = first_order_form(grid, m, [alpha](double r) { return alpha / (1.0 + r); });
        const ModeOperator den = assemble_mode(grid, WeightKind::Model, 0.0, kLower, m);
        const double q = min_generalized(num, den);
        if (q < out.value) out = {q, m};
    }
    return out;
}

}  // namespace radpauli
