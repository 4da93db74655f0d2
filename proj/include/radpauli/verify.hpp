#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radpauli/field.hpp"
#include "radpauli/grid.hpp"
#include "radpauli/operators.hpp"
#include "radpauli/spectral.hpp"

namespace radpauli {

// Radial potential V(r). `support` bounds the region where V_- is non-negligible;
// `breakpoints` are radii where V is not smooth (used to split quadrature).
struct RadialPotential {
    RadialFn fn;
    double support = 0.0;
    std::vector<double> breakpoints;

    static RadialPotential zero();
    // -depth * exp(-(r/width)^2)
    static RadialPotential gaussian_well(double depth, double width = 1.0);
    // -depth on [0, radius]
    static RadialPotential step_well(double depth, double radius = 1.0);

    double operator()(double r) const { return fn ? fn(r) : 0.0; }
    double minus(double r) const;  // V_-(r) = max(0, -V(r))
    RadialPotential scaled(double lambda) const;
};

// 2 pi \int_0^inf f(r) r dr split at the potential's breakpoints and support.
double integrate_radial(const RadialPotential& v, const RadialFn& f);

// ---------------------------------------------------------------- Lieb-Thirring

struct LTOptions {
    double r_max = 1e4;
    double h0 = 1e-3;        // smallest grid spacing
    double grading = 1.01;
    double mode_tol = 1e-6;  // stop once the |m| = M shell adds less than this, relatively
    int min_modes = 3;
    int max_modes = 400;
    // ExactH assembles the exact-weight chiral forms of H^+ and H^-; Model and
    // Smooth assemble the expanded forms with (1+r)^{2 s alpha}, (1+r^2)^{s alpha}.
    WeightKind weight = WeightKind::ExactH;
    bool spin_plus = true;
    bool spin_minus = true;
};

struct LTReport {
    double alpha = 0.0;
    double gamma = 0.0;
    double lambda = 1.0;  // coupling label; V is used as given
    double lhs = 0.0;     // both spin blocks
    double lhs_plus = 0.0;
    double lhs_minus = 0.0;
    double term1 = 0.0;   // \int V_-^{gamma+1} dx
    double term2 = 0.0;   // \int e^{-2 sgn(alpha)(h-h0)} V_-^{gamma+1-|alpha|} dx
    double empirical_L1 = 0.0;
    double empirical_L2 = 0.0;
    double ratio = 0.0;   // lhs / (term1 + term2)
    int modes = 0;        // M
    std::size_t grid_size = 0;
};

// Throws DomainError("below critical exponent") if gamma < |alpha|.
LTReport lt_report(const FieldProfile& profile, const RadialPotential& v, double gamma, const LTOptions& opt = {});

// Several exponents from a single set of mode spectra.
std::vector<LTReport> lt_report(const FieldProfile& profile, const RadialPotential& v,
                                const std::vector<double>& gammas, const LTOptions& opt = {});

// Riesz means summed over modes and the requested spin blocks, for a general
// weight. Returns {per-gamma sums, M}.
struct ModeSum {
    std::vector<double> plus;
    std::vector<double> minus;
    int modes = 0;
};
ModeSum mode_riesz_sums(const RadialGrid& grid, const FieldProfile& profile, const RadialPotential& v,
                        const std::vector<double>& gammas, const LTOptions& opt);

struct LTConstants {
    double L1 = 0.0;
    double L2 = 0.0;
    double objective = 0.0;  // mean of (L1 term1 + L2 term2) / lhs over cases with lhs > 0
    bool feasible = false;
};

// Smallest-slack (L1, L2) >= 0 with lhs <= L1 term1 + L2 term2 on every case:
// the two-variable LP minimising the mean relative overshoot, solved by vertex
// enumeration.
LTConstants fit_lt_constants(const std::vector<LTReport>& battery);
// L2 = 0: L1 = max lhs / term1 (uses lhs_plus if plus_only).
LTConstants fit_lt_constant_one_term(const std::vector<LTReport>& battery, bool plus_only = true);
// Largest violation max_i (lhs_i - L1 t1_i - L2 t2_i) / lhs_i; <= 0 means certified.
double lt_certificate_violation(const std::vector<LTReport>& battery, const LTConstants& c, bool plus_only = false);

// ---------------------------------------------------------------- Hardy

// 2^{-2a-1}(1-a)^2 / (2a + 2^{-2a-1}(1-a)^2)
double q_alpha(double alpha);
// 4(a+1)/(5a+4)
double theta_formula(double alpha);

// Minimal generalised eigenvalue of the chiral mode form over the expanded one,
// both with weight (1+r)^{2 sign alpha} r.
double hardy_q_estimate(double alpha, int sign, int m, const RadialGrid& grid);

enum class HardyPart { A, B };

struct Hardy1D {
    double value = 0.0;  // 4 sup_s (...)(...)
    bool finite = true;
    double s_at_sup = 0.0;
};

// (a): 4 sup_s (\int_s^inf U^{-1})(\int_0^s W);  (b): 4 sup_s (\int_0^s U^{-1})(\int_s^inf W).
Hardy1D hardy_1d_constant(const RadialFn& U, const RadialFn& W, HardyPart part, double t_lo = 1e-10,
                          double t_hi = 1e10);

// Minimal Rayleigh quotient of \int [(psi' + a psi/(1+r))^2 + m^2 psi^2/r^2] r dr
// over \int [psi'^2 + m^2 psi^2/r^2] r dr, minimised over m in {+-1, +-2, +-3}.
struct OffRadial {
    double value = 0.0;
    int m_min = 0;
};
OffRadial offradial_bound_check(double alpha, const RadialGrid& grid);

// ---------------------------------------------------------------- Asymptotics

struct FitResult {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;  // rms of the log-log fit
    std::vector<double> x;
    std::vector<double> y;
};

// Least-squares fit ln y = exponent ln x + ln prefactor.
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct WeakCouplingOptions {
    double r_max = 1e6;   // FE path only
    double h0 = 1e-3;
    double grading = 1.005;
    BsOptions bs{};
};

struct WeakCoupling {
    FitResult fit;        // |E| against lambda; exponent ~ 1/alpha
    double c_fit = 0.0;   // exp(mean(alpha ln|E| - ln lambda))
    double c_predicted = 0.0;
    bool birman_schwinger = false;
};

// 4^{a-1} Gamma(a) / (pi Gamma(1-a)) * 2 pi \int v_- e^{-2h} r dr
double weak_coupling_constant(const FieldProfile& profile, const RadialPotential& v);

// The ac-circle with R = 1 goes through Birman-Schwinger on T_alpha; other
// profiles through the exact-weight m = 0 spin-minus operator.
WeakCoupling weak_coupling_fit(const FieldProfile& profile, const RadialPotential& v,
                               const std::vector<double>& lambdas, const WeakCouplingOptions& opt = {});

enum class FailureFamily { Semiclassical, Weak };

// Sobolev quotients of the scaled bump families phi(r) = exp(-(eps r)^2)
// (semiclassical, param = eps) and exp(-(M r)^2) (weak, param = M).
double one_term_quotient(double alpha, FailureFamily which, double param);
FitResult one_term_failure(double alpha, FailureFamily which, const std::vector<double>& params);
double one_term_rate(double alpha, FailureFamily which);  // 2a^2/(1+a) or 2a
std::vector<double> default_failure_params(FailureFamily which);

// Chiral (lower sign, m = -1) over full gradient form of phi^(R) under (1+r)^{-2 alpha}.
double counterexample_ratio_direct(double alpha, double R);
// Throws DomainError for alpha < 1.
FitResult counterexample_ratio(double alpha, const std::vector<double>& Rs);

// ---------------------------------------------------------------- Aharonov-Casher

struct AcCheckOptions {
    double r_max = 200.0;
    int n = 1500;
    double grading = 1.004;
    int max_mode = 3;
    double eig_tol = 1e-8;
    double resonance_tol = 1e-5;
};

struct AcCheck {
    bool pass = false;
    double min_eigenvalue = 0.0;
    double form_residual = 0.0;       // |K 1| on interior rows of the m = 0 resonant block, relative
    double resonance_residual = 0.0;  // radial ODE residual of e^{-sgn(a)(h-h0)}, relative
    double jump_residual = 0.0;       // ac-circle only: derivative jump at R
};

AcCheck ac_check(const FieldProfile& profile, const AcCheckOptions& opt = {});

// ---------------------------------------------------------------- Lieb's bound

struct LiebRhs {
    double term1 = 0.0;
    double term2 = 0.0;
};

// C K_{a,g} / (a^g g(g+1)) \int v_-^{g+1} dx and
// C K_{a,g} / (a^{g-alpha}(g-alpha)(g-alpha+1)) \int (1+r)^{-2 alpha} v_-^{1+g-alpha} dx.
LiebRhs lieb_rhs(double alpha, double gamma, double a, const RadialPotential& v, double c_alpha);

// sup_t p(t;0,0) / (1/t + t^{alpha-1}) over the trusted window.
double heat_envelope_constant(const HeatKernelOrigin& p, double alpha);

// Least-squares slope of ln p against ln t over [t_lo, t_hi] (inside the window).
double heat_slope(const HeatKernelOrigin& p, double t_lo, double t_hi, int per_decade = 8);

}  // namespace radpauli
