#include "radpauli/greenkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/specfun.hpp"

namespace radpauli {
namespace {

using specfun::bessel_i_scaled;
using specfun::bessel_k_scaled;

void check(double alpha, double kappa) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("kernel needs alpha in [0,1]");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kernel needs kappa > 0");
}

void check_r(double r, double rp) {
    if (!(r > 0.0) || !(rp > 0.0)) throw DomainError("kernel needs r, r' > 0");
}

}  // namespace

double CoefficientTriple::B() const { return B_scaled * std::exp(2.0 * kappa); }
double CoefficientTriple::D() const { return D_scaled * std::exp(-2.0 * kappa); }
double CoefficientTriple::f() const { return f_scaled() * std::exp(-2.0 * kappa); }
double CoefficientTriple::g() const { return g_scaled() * std::exp(2.0 * kappa); }

CoefficientTriple coefficients(double alpha, double kappa) {
    check(alpha, kappa);
    CoefficientTriple c;
    c.alpha = alpha;
    c.kappa = kappa;
    if (alpha == 0.0) return c;
    const double i0 = bessel_i_scaled(0.0, kappa), i1 = bessel_i_scaled(1.0, kappa);
    const double ia = bessel_i_scaled(alpha, kappa), ia1 = bessel_i_scaled(alpha + 1.0, kappa);
    const double k0 = bessel_k_scaled(0.0, kappa), k1 = bessel_k_scaled(1.0, kappa);
    const double ka = bessel_k_scaled(alpha, kappa), kb = bessel_k_scaled(1.0 - alpha, kappa);
    c.A = kappa * (i0 * kb + i1 * ka);
    c.B_scaled = kappa * (i0 * ia1 - i1 * ia) + 2.0 * alpha * i0 * ia;
    c.D_scaled = kappa * (k1 * ka - k0 * kb);
    if (!(c.A > 0.0) || !std::isfinite(c.A) || !std::isfinite(c.B_scaled) || !std::isfinite(c.D_scaled))
        throw NumericalError("coefficient evaluation overflowed");
    return c;
}

CoefficientTriple coefficients_direct(double alpha, double kappa) {
    check(alpha, kappa);
    CoefficientTriple c;
    c.alpha = alpha;
    c.kappa = kappa;
    const double i0 = bessel_i_scaled(0.0, kappa), i1 = bessel_i_scaled(1.0, kappa);
    const double ia = bessel_i_scaled(alpha, kappa), ia1 = bessel_i_scaled(alpha + 1.0, kappa);
    const double k0 = bessel_k_scaled(0.0, kappa), k1 = bessel_k_scaled(1.0, kappa);
    const double ka = bessel_k_scaled(alpha, kappa), ka1 = bessel_k_scaled(alpha + 1.0, kappa);
    c.A = kappa * i0 * ka1 + kappa * i1 * ka - 2.0 * alpha * i0 * ka;
    c.B_scaled = kappa * i0 * ia1 - kappa * i1 * ia + 2.0 * alpha * i0 * ia;
    c.D_scaled = kappa * k1 * ka - kappa * k0 * ka1 + 2.0 * alpha * k0 * ka;
    return c;
}

FG f_g(double alpha, double kappa) {
    const CoefficientTriple c = coefficients(alpha, kappa);
    return {c.f(), c.g()};
}

double A_small_kappa(double alpha, double kappa) {
    return std::pow(2.0, -alpha) * boost::math::tgamma(1.0 - alpha) * std::pow(kappa, alpha);
}

double f_small_kappa_stated(double alpha, double kappa) {
    return boost::math::tgamma(alpha) / (2.0 * boost::math::tgamma(1.0 - alpha)) * std::pow(kappa, -2.0 * alpha);
}

double f_small_kappa(double alpha, double kappa) { return std::pow(4.0, alpha) * f_small_kappa_stated(alpha, kappa); }

double g_small_kappa(double alpha) {
    return 2.0 / (boost::math::tgamma(alpha) * boost::math::tgamma(1.0 - alpha));
}

double f_large_kappa(double alpha, double kappa) {
    return alpha * std::numbers::pi / (2.0 * kappa) * std::exp(-2.0 * kappa);
}

double g_large_kappa(double alpha, double kappa) {
    return alpha / (2.0 * std::numbers::pi * kappa) * std::exp(2.0 * kappa);
}

ResolventKernel::ResolventKernel(double alpha, double kappa)
    : alpha_(alpha), kappa_(kappa), c_(radpauli::coefficients(alpha, kappa)) {}

double ResolventKernel::operator()(double r, double rp) const {
    check_r(r, rp);
    const double a = std::min(r, rp), b = std::max(r, rp), k = kappa_;
    const double s = std::sqrt(a * b);
    if (b <= 1.0) {
        const double i0a = bessel_i_scaled(0.0, k * a);
        return s * (bessel_k_scaled(0.0, k * b) * i0a * std::exp(k * (a - b)) +
                    c_.f_scaled() * i0a * bessel_i_scaled(0.0, k * b) * std::exp(k * (a + b - 2.0)));
    }
    if (a >= 1.0) {
        const double kab = bessel_k_scaled(alpha_, k * b);
        return s * (kab * bessel_i_scaled(alpha_, k * a) * std::exp(k * (a - b)) +
                    c_.g_scaled() * bessel_k_scaled(alpha_, k * a) * kab * std::exp(-k * (a + b - 2.0)));
    }
    return s / c_.A * bessel_i_scaled(0.0, k * a) * bessel_k_scaled(alpha_, k * b) * std::exp(k * (a - b));
}

double ResolventKernel::gamma(double r, double rp) const {
    check_r(r, rp);
    if (alpha_ == 0.0) return 0.0;
    const double a = std::min(r, rp), b = std::max(r, rp), k = kappa_;
    const double s = std::sqrt(a * b);
    if (b <= 1.0)
        return s * c_.f_scaled() * bessel_i_scaled(0.0, k * a) * bessel_i_scaled(0.0, k * b) *
               std::exp(k * (a + b - 2.0));
    const double dk = specfun::bessel_k_scaled_diff(alpha_, 0.0, k * b);
    if (a < 1.0) {
        const double inv_a_minus_1 = (1.0 - c_.A) / c_.A;
        return s * bessel_i_scaled(0.0, k * a) * std::exp(k * (a - b)) *
               (inv_a_minus_1 * bessel_k_scaled(alpha_, k * b) + dk);
    }
    const double di = specfun::bessel_i_scaled_diff(alpha_, 0.0, k * a);
    const double rpart = std::exp(k * (a - b)) * (dk * bessel_i_scaled(alpha_, k * a) + bessel_k_scaled(0.0, k * b) * di);
    const double spart = c_.g_scaled() * bessel_k_scaled(alpha_, k * a) * bessel_k_scaled(alpha_, k * b) *
                         std::exp(-k * (a + b - 2.0));
    return s * (rpart + spart);
}

double resolvent_kernel(double alpha, double kappa, double r, double rp) {
    return ResolventKernel(alpha, kappa)(r, rp);
}

double gamma_kernel(double alpha, double kappa, double r, double rp) {
    return ResolventKernel(alpha, kappa).gamma(r, rp);
}

double kernel_envelope(double alpha, double kappa, double r, double rp) {
    check(alpha, kappa);
    check_r(r, rp);
    return std::pow(kappa, -2.0 * alpha) * std::sqrt(r * rp) * std::pow((1.0 + r) * (1.0 + rp), -alpha);
}

double kernel_bound_ratio(double alpha, double kappa, double r, double rp) {
    if (alpha == 0.0) return 0.0;
    return std::abs(gamma_kernel(alpha, kappa, r, rp)) / kernel_envelope(alpha, kappa, r, rp);
}

double raw_kernel_ratio(double alpha, double kappa, double r, double rp) {
    return std::abs(resolvent_kernel(alpha, kappa, r, rp)) / kernel_envelope(alpha, kappa, r, rp);
}

std::vector<double> log_space(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1) throw DomainError("invalid log range");
    const int n = std::max(1, static_cast<int>(std::lround(std::log10(hi / lo) * per_decade)));
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / n);
    out.front() = lo;
    out.back() = hi;
    return out;
}

SweepMax kernel_sweep_max(double alpha, const SweepRange& range) {
    const auto ks = log_space(range.kappa_min, range.kappa_max, range.per_decade);
    const auto rs = log_space(range.r_min, range.r_max, range.per_decade);
    SweepMax out{alpha, 0.0, 0.0};
    for (double k : ks) {
        const ResolventKernel K(alpha, k);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = i; j < rs.size(); ++j) {
                const double env = kernel_envelope(alpha, k, rs[i], rs[j]);
                out.gamma_ratio = std::max(out.gamma_ratio, std::abs(K.gamma(rs[i], rs[j])) / env);
                out.raw_ratio = std::max(out.raw_ratio, std::abs(K(rs[i], rs[j])) / env);
            }
    }
    return out;
}

SweepRange standard_sweep() { return {1e-3, 30.0, 1e-2, 50.0, 6}; }
SweepRange extended_sweep() { return {1e-4, 300.0, 1e-3, 500.0, 6}; }

}  // namespace radpauli
