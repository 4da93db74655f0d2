#include "radpauli/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radpauli/errors.hpp"

namespace radpauli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadTol = 1e-13;

template <class F>
double integrate(F f, double a, double b, double* err = nullptr, unsigned depth = 12) {
    double e = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, depth, kQuadTol, &e);
    if (err) *err = e;
    return v;
}

// Upper end of the support (inf for power tails). Gaussians are cut where
// exp(-u^2) drops below 1e-290, before denormals stall the quadrature.
double support_end(const FieldProfile& p) {
    if (p.kind == FieldKind::CompactBump) return p.scale;
    if (p.kind == FieldKind::Gaussian) return 25.8 * p.scale;
    return kInf;
}

void check_profile(const FieldProfile& p) {
    if (!(p.scale > 0.0)) throw DomainError("field scale R must be positive");
    if (p.kind == FieldKind::PowerTail && !(p.decay > 2.0))
        throw ContractError("power-tail field with decay <= 2 is not integrable");
}

// \int_a^b B(s) s w(s) ds split at the support end.
template <class W>
double field_moment(const FieldProfile& p, double a, double b, W w, double* err = nullptr, unsigned depth = 12) {
    const double end = support_end(p);
    b = std::min(b, end);
    if (!(b > a)) return 0.0;
    auto f = [&](double s) { return p.field(s) * s * w(s); };
    return integrate(f, a, b, err, depth);
}

}  // namespace

std::string_view to_string(FieldKind k) {
    switch (k) {
        case FieldKind::Zero: return "zero";
        case FieldKind::Gaussian: return "gaussian";
        case FieldKind::CompactBump: return "compact-bump";
        case FieldKind::PowerTail: return "power-tail";
        case FieldKind::AcCircle: return "ac-circle";
    }
    return "unknown";
}

FieldKind field_kind_from_string(std::string_view s) {
    if (s == "zero") return FieldKind::Zero;
    if (s == "gaussian") return FieldKind::Gaussian;
    if (s == "compact-bump") return FieldKind::CompactBump;
    if (s == "power-tail") return FieldKind::PowerTail;
    if (s == "ac-circle") return FieldKind::AcCircle;
    throw DomainError("unknown field kind '" + std::string(s) + "'");
}

FieldProfile FieldProfile::zero() { return {}; }

FieldProfile FieldProfile::gaussian(double amplitude, double scale) {
    FieldProfile p;
    p.kind = FieldKind::Gaussian;
    p.amplitude = amplitude;
    p.scale = scale;
    return p;
}

FieldProfile FieldProfile::compact_bump(double amplitude, double scale) {
    FieldProfile p;
    p.kind = FieldKind::CompactBump;
    p.amplitude = amplitude;
    p.scale = scale;
    return p;
}

FieldProfile FieldProfile::power_tail(double amplitude, double scale, double decay) {
    FieldProfile p;
    p.kind = FieldKind::PowerTail;
    p.amplitude = amplitude;
    p.scale = scale;
    p.decay = decay;
    return p;
}

FieldProfile FieldProfile::ac_circle(double alpha, double scale) {
    FieldProfile p;
    p.kind = FieldKind::AcCircle;
    p.alpha = alpha;
    p.scale = scale;
    return p;
}

FieldProfile FieldProfile::gaussian_with_flux(double alpha, double scale) {
    return gaussian(2.0 * alpha / (scale * scale), scale);
}

double FieldProfile::field(double r) const {
    const double u = r / scale;
    switch (kind) {
        case FieldKind::Zero:
        case FieldKind::AcCircle: return 0.0;  // singular part handled separately
        case FieldKind::Gaussian: return amplitude * std::exp(-u * u);
        case FieldKind::CompactBump: return u < 1.0 ? amplitude * (1.0 - u * u) * (1.0 - u * u) : 0.0;
        case FieldKind::PowerTail: return amplitude * std::pow(1.0 + u, -decay);
    }
    return 0.0;
}

FieldProfile FieldProfile::negated() const {
    FieldProfile p = *this;
    p.amplitude = -amplitude;
    p.alpha = -alpha;
    return p;
}

double flux_alpha(const FieldProfile& p) {
    check_profile(p);
    if (p.kind == FieldKind::Zero) return 0.0;
    if (p.kind == FieldKind::AcCircle) return p.alpha;
    double err = 0.0;
    const double v = field_moment(p, 0.0, kInf, [](double) { return 1.0; }, &err);
    if (!std::isfinite(v) || err > 1e-8 * std::max(1.0, std::abs(v)))
        throw ContractError("flux integral did not converge; field not integrable");
    return v;
}

double potential_h(const FieldProfile& p, double r) {
    check_profile(p);
    if (r < 0.0) throw DomainError("potential_h needs r >= 0");
    switch (p.kind) {
        case FieldKind::Zero: return 0.0;
        case FieldKind::AcCircle: return r > p.scale ? p.alpha * std::log(r / p.scale) : 0.0;
        default: break;
    }
    const double inner = r > 0.0 ? std::log(r) * field_moment(p, 0.0, r, [](double) { return 1.0; }) : 0.0;
    const double outer = field_moment(p, r, kInf, [](double s) { return std::log(s); });
    return inner + outer;
}

std::vector<double> potential_h_sorted(const FieldProfile& p, std::span<const double> r) {
    check_profile(p);
    const std::size_t n = r.size();
    std::vector<double> h(n, 0.0);
    if (n == 0 || p.kind == FieldKind::Zero) return h;
    if (!std::is_sorted(r.begin(), r.end()) || r.front() < 0.0)
        throw DomainError("potential_h_sorted needs ascending nonnegative radii");
    if (p.kind == FieldKind::AcCircle) {
        for (std::size_t i = 0; i < n; ++i) h[i] = potential_h(p, r[i]);
        return h;
    }
    auto one = [](double) { return 1.0; };
    auto lg = [](double s) { return std::log(s); };
    // F(r) = \int_0^r B s ds accumulated upward, G(r) = \int_r^inf B s ln s ds downward.
    std::vector<double> F(n), G(n);
    // Short pieces of a smooth integrand: a few Kronrod levels are plenty.
    constexpr unsigned shallow = 3;
    F[0] = field_moment(p, 0.0, r[0], one);
    for (std::size_t i = 1; i < n; ++i) F[i] = F[i - 1] + field_moment(p, r[i - 1], r[i], one, nullptr, shallow);
    G[n - 1] = field_moment(p, r[n - 1], kInf, lg);
    for (std::size_t i = n - 1; i-- > 0;)
        G[i] = G[i + 1] + field_moment(p, r[i], r[i + 1], lg, nullptr, r[i] > 0.0 ? shallow : 12);
    for (std::size_t i = 0; i < n; ++i) h[i] = (r[i] > 0.0 ? std::log(r[i]) * F[i] : 0.0) + G[i];
    return h;
}

double h_origin(const FieldProfile& p) {
    if (p.kind == FieldKind::AcCircle || p.kind == FieldKind::Zero) return 0.0;
    return potential_h(p, 0.0);
}

PotentialH tabulate_h(const FieldProfile& p, double r_max, int points_per_decade) {
    check_profile(p);
    if (!(r_max > p.scale)) throw DomainError("tabulate_h needs r_max > R");
    PotentialH t;
    t.profile = p;
    const double r_lo = 1e-6 * p.scale;
    const int n = static_cast<int>(std::ceil(std::log10(r_max / r_lo) * points_per_decade)) + 1;
    t.r.resize(n);
    for (int i = 0; i < n; ++i) t.r[i] = r_lo * std::pow(r_max / r_lo, static_cast<double>(i) / (n - 1));
    t.r.back() = r_max;
    t.h = potential_h_sorted(p, t.r);
    t.alpha = flux_alpha(p);
    t.c_fit = t.h.back() - t.alpha * std::log(r_max);
    t.h0 = h_origin(p);
    const SupBounds m = sup_bounds_m(p, r_max);
    t.m_plus = m.m_plus;
    t.m_minus = m.m_minus;
    return t;
}

namespace {

// max and min of d(r) = h(r) - alpha ln(1 + r/R) over [0, r_max] plus the
// limiting value at infinity estimated from the asymptote at r_max.
struct Deviation {
    double max, min, tail;
};

Deviation deviation_range(const FieldProfile& p, double alpha, double r_max, int per_decade) {
    const double r_lo = 1e-6 * p.scale;
    const int n = static_cast<int>(std::ceil(std::log10(r_max / r_lo) * per_decade)) + 1;
    std::vector<double> r(n + 1);
    r[0] = 0.0;
    for (int i = 0; i < n; ++i) r[i + 1] = r_lo * std::pow(r_max / r_lo, static_cast<double>(i) / (n - 1));
    r.back() = r_max;
    if (p.kind == FieldKind::AcCircle) r.push_back(p.scale), std::sort(r.begin(), r.end());
    const std::vector<double> h = potential_h_sorted(p, r);
    Deviation d{-kInf, kInf, 0.0};
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double v = h[i] - alpha * std::log1p(r[i] / p.scale);
        d.max = std::max(d.max, v);
        d.min = std::min(d.min, v);
    }
    // lim (h - alpha ln(1+r/R)) = (h(r_max) - alpha ln r_max) + alpha ln R
    d.tail = h.back() - alpha * std::log(r_max) + alpha * std::log(p.scale);
    d.max = std::max(d.max, d.tail);
    d.min = std::min(d.min, d.tail);
    return d;
}

}  // namespace

SupBounds sup_bounds_m(const FieldProfile& p, double r_max) {
    check_profile(p);
    if (p.kind == FieldKind::Zero) return {1.0, 1.0};
    const double alpha = flux_alpha(p);
    const Deviation outer = deviation_range(p, alpha, r_max, 40);
    const Deviation inner = deviation_range(p, alpha, r_max / 10.0, 40);
    const double drift = std::max(std::abs(outer.max - inner.max), std::abs(outer.min - inner.min));
    if (drift > 1e-3)
        throw ContractError("Assumption 1 violated: sup bounds m+/- still drifting at r_max (change " +
                            std::to_string(drift) + ")");
    return {std::exp(outer.max), std::exp(-outer.min)};
}

AsymptoteFit alpha_from_h_asymptote(const PotentialH& t) {
    const double r_max = t.r.back();
    const double R = t.profile.scale;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        if (t.r[i] < r_max / 10.0) continue;
        const double x = std::log1p(t.r[i] / R);
        sx += x;
        sy += t.h[i];
        sxx += x * x;
        sxy += x * t.h[i];
        ++n;
    }
    if (n < 3) throw DomainError("alpha_from_h_asymptote needs at least three points in the outer decade");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < t.r.size(); ++i) {
        if (t.r[i] < r_max / 10.0) continue;
        const double e = t.h[i] - (icpt + slope * std::log1p(t.r[i] / R));
        ss += e * e;
    }
    const double res = std::sqrt(ss / n);
    return {slope, res, res > 1e-4 * std::max(1.0, std::abs(slope))};
}

FieldProfile rescale_to_unit_R(const FieldProfile& p) {
    check_profile(p);
    FieldProfile q = p;
    if (p.kind != FieldKind::AcCircle) q.amplitude = p.amplitude * p.scale * p.scale;
    q.scale = 1.0;
    return q;
}

}  // namespace radpauli
