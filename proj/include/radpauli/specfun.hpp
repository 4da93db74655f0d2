#pragma once

// Real-order modified Bessel functions I_nu, K_nu for nu in [0,2], z > 0.
//
// Scaled variants return e^{-z} I_nu(z) and e^{z} K_nu(z); use them whenever
// the argument can exceed a few hundred.

namespace radpauli::specfun {

inline constexpr double kNuMax = 2.0;

double bessel_i(double nu, double z);
double bessel_k(double nu, double z);
double bessel_i_scaled(double nu, double z);
double bessel_k_scaled(double nu, double z);

// |z (I_nu K_{nu+1} + K_nu I_{nu+1}) - 1|, nu in [0,1].
double wronskian_residual(double nu, double z);

double log_gamma(double x);

// Branch-level access, used by the crossover tests and by the differenced
// kernel evaluations in greenkernel.
double bessel_i_series_scaled(double nu, double z);
double bessel_i_asymptotic_scaled(double nu, double z);
double bessel_k_temme_scaled(double nu, double z);  // z <= 2
double bessel_k_steed_scaled(double nu, double z);  // z > 0, best for z >= 2
double bessel_k_asymptotic_scaled(double nu, double z);

// Argument at which I_nu and K_nu switch to the large-z expansion.
double asymptotic_threshold(double nu);

// e^{-z}(I_a(z) - I_b(z)) and e^{z}(K_a(z) - K_b(z)) without cancelling the
// leading asymptotic term when z is large.
double bessel_i_scaled_diff(double a, double b, double z);
double bessel_k_scaled_diff(double a, double b, double z);

}  // namespace radpauli::specfun
