#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "radpauli/operators.hpp"

namespace radpauli {

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residuals;    // ||A y - lambda y|| / ||A||, ||y|| = 1
    std::size_t count_negative = 0;
    std::size_t grid_size = 0;
};

struct RieszMean {
    double gamma = 0.0;
    double value = 0.0;
};

// Eigenpairs of the pencil (K, M) with eigenvectors u normalised so u^T M u = 1.
struct EigenSystem {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

// All negative eigenvalues (at most k_max if k_max > 0).
Spectrum eigen_negative(const ModeOperator& op, int k_max = -1);

double lowest_eigenvalue(const ModeOperator& op);

// Full eigendecomposition; used by the heat kernel and the dense checks.
EigenSystem eigen_all(const ModeOperator& op);
std::vector<double> eigenvalues_all(const ModeOperator& op);

// Solves (K + shift M) u = rhs by tridiagonal elimination; K + shift M must be
// positive definite.
std::vector<double> solve_shifted(const ModeOperator& op, double shift, const std::vector<double>& rhs);

// Discrete resolvent kernel (K + kappa^2 M)^{-1} at (op.r[i], op.r[j]), i = 0..n-1.
std::vector<double> resolvent_column(const ModeOperator& op, double kappa, std::size_t j);

RieszMean riesz_mean(const Spectrum& spec, double gamma);
double riesz_sum(const std::vector<double>& eigenvalues, double gamma);

// Heat kernel on the diagonal at the origin for an m = 0 operator,
// p(t;0,0) = (2 pi)^{-1} sum_k e^{-t lambda_k} u_k(0)^2.
struct HeatWindow {
    double t_min;
    double t_max;
};

class HeatKernelOrigin {
public:
    explicit HeatKernelOrigin(const ModeOperator& op);
    HeatWindow window() const { return window_; }
    // Throws ContractError carrying the window if t is outside it.
    double operator()(double t) const;
    // Evaluate without the window check.
    double unchecked(double t) const;

private:
    std::vector<double> lambda_;
    std::vector<double> u0sq_;
    HeatWindow window_{};
};

double heat_diag_origin(const ModeOperator& op, double t);

// K_{a,gamma} = Gamma(gamma+1) / (e^{-a} - a E_1(a)).
double lieb_constant(double a, double gamma);

// Ground state of T_alpha + v located through the Birman-Schwinger operator
// sqrt(v_-) (T_alpha + kappa^2)^{-1} sqrt(v_-), discretised by Nystrom.
struct BsOptions {
    double tol = 1e-10;
    double kappa_lo = 1e-12;
    int nodes = 400;  // Nystrom nodes across the support of v_-
};

struct BsResult {
    bool bound = false;
    double kappa = 0.0;
    double top_eigenvalue = 0.0;  // at kappa
    int evaluations = 0;
};

// v_- must vanish outside [0, support].
BsResult birman_schwinger_kappa(double alpha, const RadialFn& v, double support, const BsOptions& opt = {});

// Largest eigenvalue of the Nystrom matrix at a given kappa.
double birman_schwinger_top(double alpha, const RadialFn& v, double support, double kappa, int nodes);

}  // namespace radpauli
