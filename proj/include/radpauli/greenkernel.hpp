#pragma once

#include <vector>

namespace radpauli {

// A, B, D of the resolvent of T_alpha. B and D carry e^{+2 kappa} and
// e^{-2 kappa}; they are stored scaled so that nothing overflows:
//   B = B_scaled e^{2 kappa},  D = D_scaled e^{-2 kappa}.
struct CoefficientTriple {
    double alpha = 0.0;
    double kappa = 0.0;
    double A = 1.0;
    double B_scaled = 0.0;
    double D_scaled = 0.0;

    double B() const;
    double D() const;
    double f() const;  // D / A
    double g() const;  // B / A
    double f_scaled() const { return D_scaled / A; }  // f e^{2 kappa}
    double g_scaled() const { return B_scaled / A; }  // g e^{-2 kappa}
};

// Grouped evaluation: A = kappa (I_0 K_{1-alpha} + I_1 K_alpha) and
// D = kappa (K_1 K_alpha - K_0 K_{1-alpha}), identical to the defining
// combinations by the recurrence K_{a+1} - K_{a-1} = (2a/z) K_a, but free of
// the small-kappa cancellation.
CoefficientTriple coefficients(double alpha, double kappa);

// The defining bilinear combinations evaluated term by term.
CoefficientTriple coefficients_direct(double alpha, double kappa);

struct FG {
    double f;
    double g;
};
FG f_g(double alpha, double kappa);

// Leading small- and large-kappa behaviour of the coefficients.
double A_small_kappa(double alpha, double kappa);          // 2^{-alpha} Gamma(1-alpha) kappa^alpha
double f_small_kappa_stated(double alpha, double kappa);  // Gamma(alpha)/(2 Gamma(1-alpha)) kappa^{-2 alpha}
double f_small_kappa(double alpha, double kappa);         // 4^alpha Gamma(alpha)/(2 Gamma(1-alpha)) kappa^{-2 alpha}
double g_small_kappa(double alpha);                       // 2 / (Gamma(alpha) Gamma(1-alpha))
double f_large_kappa(double alpha, double kappa);         // (alpha pi / 2 kappa) e^{-2 kappa}
double g_large_kappa(double alpha, double kappa);         // (alpha / 2 pi kappa) e^{2 kappa}

// Kernel of (T_alpha + kappa^2)^{-1} on L^2((0,inf), dr).
class ResolventKernel {
public:
    ResolventKernel(double alpha, double kappa);
    double alpha() const { return alpha_; }
    double kappa() const { return kappa_; }
    const CoefficientTriple& coefficients() const { return c_; }

    double operator()(double r, double rp) const;
    // Difference with the alpha = 0 kernel, grouped to avoid cancellation.
    double gamma(double r, double rp) const;

private:
    double alpha_;
    double kappa_;
    CoefficientTriple c_;
};

double resolvent_kernel(double alpha, double kappa, double r, double rp);
double gamma_kernel(double alpha, double kappa, double r, double rp);

// kappa^{-2 alpha} sqrt(r r') (1+r)^{-alpha} (1+r')^{-alpha}
double kernel_envelope(double alpha, double kappa, double r, double rp);
double kernel_bound_ratio(double alpha, double kappa, double r, double rp);
double raw_kernel_ratio(double alpha, double kappa, double r, double rp);

struct SweepRange {
    double kappa_min, kappa_max;
    double r_min, r_max;
    int per_decade = 6;
};

struct SweepMax {
    double alpha;
    double gamma_ratio;  // max |Gamma_alpha| / envelope
    double raw_ratio;    // max |kernel| / envelope
};

std::vector<double> log_space(double lo, double hi, int per_decade);

SweepMax kernel_sweep_max(double alpha, const SweepRange& range);

// Standard sweep and its one-decade extension.
SweepRange standard_sweep();
SweepRange extended_sweep();

}  // namespace radpauli
