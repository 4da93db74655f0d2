#include "radpauli/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "radpauli/errors.hpp"

namespace radpauli {
namespace {

double rho(WeightKind kind, double alpha, int spin, double r) {
    switch (kind) {
        case WeightKind::Model: return std::pow(1.0 + r, 2.0 * spin * alpha);
        case WeightKind::Smooth: return std::pow(1.0 + r * r, spin * alpha);
        case WeightKind::Canonical: return r <= 1.0 ? 1.0 : std::pow(r, -2.0 * alpha);
        default: break;
    }
    throw DomainError("weight kind has no closed-form density");
}

// Free nodes [lo, hi) of the grid for a mode form.
std::pair<std::size_t, std::size_t> free_range(const RadialGrid& g, int m) {
    return {m == 0 ? 0u : 1u, g.size() - 1};
}

ModeOperator empty_operator(const RadialGrid& g, std::size_t lo, std::size_t hi) {
    ModeOperator op;
    const std::size_t n = hi - lo;
    op.diag.assign(n, 0.0);
    op.off.assign(n > 0 ? n - 1 : 0, 0.0);
    op.mass.assign(n, 0.0);
    op.r.assign(g.r.begin() + lo, g.r.begin() + hi);
    if (g.one && *g.one >= lo && *g.one < hi) op.one = *g.one - lo;
    return op;
}

// Scatter a 2x2 element matrix for grid element e into the free-node system.
void scatter(ModeOperator& op, std::size_t e, std::size_t lo, std::size_t hi, double kaa, double kab,
             double kbb) {
    const bool a_free = e >= lo && e < hi;
    const bool b_free = e + 1 >= lo && e + 1 < hi;
    if (a_free) op.diag[e - lo] += kaa;
    if (b_free) op.diag[e + 1 - lo] += kbb;
    if (a_free && b_free) op.off[e - lo] += kab;
}

void scatter_lumped(std::vector<double>& d, std::size_t e, std::size_t lo, std::size_t hi, double val) {
    if (e >= lo && e < hi) d[e - lo] += val;
    if (e + 1 >= lo && e + 1 < hi) d[e + 1 - lo] += val;
}

}  // namespace

Gauss3 gauss3(double a, double b) {
    const double c = 0.5 * (a + b), h = b - a;
    const double d = 0.5 * h * std::sqrt(0.6);
    return {{c - d, c, c + d}, {h * 5.0 / 18.0, h * 8.0 / 18.0, h * 5.0 / 18.0}};
}

std::array<double, 3> inverse_square_element(double a, double b) {
    const double h = b - a;
    if (h / a > 0.1) {
        const double L = std::log(b / a);
        const double s = 1.0 / (h * h);
        return {s * (b * h / a - 2.0 * b * L + h), s * ((a + b) * L - 2.0 * h), s * (h - 2.0 * a * L + a * h / b)};
    }
    using Q = boost::math::quadrature::gauss<double, 8>;
    auto na = [=](double r) { return (b - r) / h; };
    auto nb = [=](double r) { return (r - a) / h; };
    return {Q::integrate([&](double r) { return na(r) * na(r) / (r * r); }, a, b),
            Q::integrate([&](double r) { return na(r) * nb(r) / (r * r); }, a, b),
            Q::integrate([&](double r) { return nb(r) * nb(r) / (r * r); }, a, b)};
}

WeightTable weight_table(const RadialGrid& grid, WeightKind kind, double alpha, int spin,
                         const FieldProfile* profile) {
    if (spin != kUpper && spin != kLower) throw DomainError("spin must be +1 or -1");
    if (kind == WeightKind::TAlpha) throw DomainError("T_alpha has no weight table");
    WeightTable t;
    t.kind = kind;
    t.alpha = alpha;
    t.spin = spin;
    const std::size_t ne = grid.size() - 1;
    t.mid.resize(ne);
    t.gauss.resize(ne);
    if (kind != WeightKind::ExactH) {
        for (std::size_t e = 0; e < ne; ++e) {
            const Gauss3 q = gauss3(grid.r[e], grid.r[e + 1]);
            t.mid[e] = rho(kind, alpha, spin, q.x[1]);
            for (int k = 0; k < 3; ++k) t.gauss[e][k] = rho(kind, alpha, spin, q.x[k]);
        }
        return t;
    }
    if (!profile) throw DomainError("exact-h weight needs a field profile");
    t.alpha = flux_alpha(*profile);
    // Gauss points in element order are already ascending; the middle one is the midpoint.
    std::vector<double> pts;
    pts.reserve(3 * ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const Gauss3 q = gauss3(grid.r[e], grid.r[e + 1]);
        pts.insert(pts.end(), q.x.begin(), q.x.end());
    }
    const std::vector<double> h = potential_h_sorted(*profile, pts);
    for (std::size_t e = 0; e < ne; ++e) {
        for (int k = 0; k < 3; ++k) t.gauss[e][k] = std::exp(2.0 * spin * h[3 * e + k]);
        t.mid[e] = t.gauss[e][1];
    }
    return t;
}

std::vector<double> sample_midpoints(const RadialGrid& grid, const RadialFn& v) {
    std::vector<double> out(grid.size() - 1, 0.0);
    if (!v) return out;
    for (std::size_t e = 0; e + 1 < grid.size(); ++e) out[e] = v(0.5 * (grid.r[e] + grid.r[e + 1]));
    return out;
}

double ModeOperator::energy(const std::vector<double>& phi) const {
    const std::vector<double> k = apply(phi);
    return std::inner_product(phi.begin(), phi.end(), k.begin(), 0.0);
}

double ModeOperator::norm2(const std::vector<double>& phi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += mass[i] * phi[i] * phi[i];
    return s;
}

std::vector<double> ModeOperator::apply(const std::vector<double>& phi) const {
    if (phi.size() != size()) throw DomainError("vector size does not match operator");
    std::vector<double> y(size());
    for (std::size_t i = 0; i < size(); ++i) {
        double s = diag[i] * phi[i];
        if (i > 0) s += off[i - 1] * phi[i - 1];
        if (i + 1 < size()) s += off[i] * phi[i + 1];
        y[i] = s;
    }
    return y;
}

ModeOperator assemble_mode(const RadialGrid& grid, const WeightTable& w, int m, Form form,
                           const std::vector<double>& v_mid) {
    if (w.mid.size() + 1 != grid.size()) throw DomainError("weight table does not match grid");
    if (!v_mid.empty() && v_mid.size() + 1 != grid.size()) throw DomainError("potential samples do not match grid");
    const auto [lo, hi] = free_range(grid, m);
    ModeOperator op = empty_operator(grid, lo, hi);
    op.kind = w.kind;
    op.form = form;
    op.m = m;
    op.spin = w.spin;
    op.alpha = w.alpha;
    const double sm = static_cast<double>(w.spin * m);
    const double m2 = static_cast<double>(m) * m;
    for (std::size_t e = 0; e + 1 < grid.size(); ++e) {
        const double a = grid.r[e], b = grid.r[e + 1], h = b - a;
        const Gauss3 q = gauss3(a, b);
        double kaa = 0, kab = 0, kbb = 0;
        for (int k = 0; k < 3; ++k) {
            const double r = q.x[k];
            const double W = q.w[k] * w.gauss[e][k] * r;
            const double na = (b - r) / h, nb = (r - a) / h;
            if (form == Form::Chiral) {
                const double ga = -1.0 / h - sm * na / r, gb = 1.0 / h - sm * nb / r;
                kaa += W * ga * ga;
                kab += W * ga * gb;
                kbb += W * gb * gb;
            } else {
                const double c = m2 / (r * r);
                kaa += W * (1.0 / (h * h) + c * na * na);
                kab += W * (-1.0 / (h * h) + c * na * nb);
                kbb += W * (1.0 / (h * h) + c * nb * nb);
            }
        }
        scatter(op, e, lo, hi, kaa, kab, kbb);
        const double lump = 0.5 * h * w.mid[e] * 0.5 * (a + b);
        scatter_lumped(op.mass, e, lo, hi, lump);
        if (!v_mid.empty()) scatter_lumped(op.diag, e, lo, hi, lump * v_mid[e]);
    }
    return op;
}

ModeOperator assemble_mode(const RadialGrid& grid, WeightKind kind, double alpha, int spin, int m,
                           const RadialFn& v, Form form, const FieldProfile* profile) {
    if (kind == WeightKind::TAlpha) return assemble_T_alpha(grid, alpha, v);
    return assemble_mode(grid, weight_table(grid, kind, alpha, spin, profile), m, form,
                         v ? sample_midpoints(grid, v) : std::vector<double>{});
}

ModeOperator assemble_h_minus(const RadialGrid& grid, double alpha, const RadialFn& v) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("h-minus needs 0 <= alpha < 1");
    return assemble_mode(grid, WeightKind::Model, alpha, kLower, 0, v);
}

ModeOperator assemble_T_alpha(const RadialGrid& grid, double alpha, const RadialFn& v) {
    if (!grid.contains_one()) throw DomainError("T_alpha assembly needs a grid node at r = 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("T_alpha needs 0 <= alpha <= 1");
    const std::size_t lo = 0, hi = grid.size() - 1;
    ModeOperator op = empty_operator(grid, lo, hi);
    op.kind = WeightKind::TAlpha;
    op.alpha = alpha;
    for (std::size_t e = 0; e + 1 < grid.size(); ++e) {
        const double a = grid.r[e], b = grid.r[e + 1], h = b - a;
        const double c = b <= 1.0 ? -0.25 : alpha * alpha - 0.25;
        const auto q = inverse_square_element(a, b);
        scatter(op, e, lo, hi, 1.0 / h + c * q[0], -1.0 / h + c * q[1], 1.0 / h + c * q[2]);
        scatter_lumped(op.mass, e, lo, hi, 0.5 * h);
        if (v) scatter_lumped(op.diag, e, lo, hi, 0.5 * h * v(0.5 * (a + b)));
    }
    op.diag[*op.one] -= alpha;
    op.diag[0] += 0.5 / grid.r[0];
    return op;
}

std::pair<ModeOperator, ModeOperator> dirichlet_split(const ModeOperator& op) {
    if (!op.one || *op.one == 0 || *op.one + 1 >= op.size())
        throw DomainError("Dirichlet split needs r = 1 as an interior node");
    const std::size_t k = *op.one;
    auto part = [&](std::size_t lo, std::size_t hi) {
        ModeOperator p;
        p.diag.assign(op.diag.begin() + lo, op.diag.begin() + hi);
        p.mass.assign(op.mass.begin() + lo, op.mass.begin() + hi);
        p.r.assign(op.r.begin() + lo, op.r.begin() + hi);
        p.off.assign(op.off.begin() + lo, op.off.begin() + (hi - 1));
        p.kind = op.kind;
        p.form = op.form;
        p.m = op.m;
        p.spin = op.spin;
        p.alpha = op.alpha;
        return p;
    };
    ModeOperator inner = part(0, k), outer = part(k + 1, op.size());
    // The point term -alpha|eta(1)|^2 lives on the removed node and vanishes with it.
    return {std::move(inner), std::move(outer)};
}

}  // namespace radpauli
