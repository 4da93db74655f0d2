#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <lapacke.h>

#include <boost/math/tools/roots.hpp>

#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/spectral.hpp"

namespace radpauli {
namespace {

struct Nystrom {
    std::vector<double> r;
    std::vector<double> s;  // sqrt(weight * v_-)
};

// Nodes graded quadratically toward the origin on (0, min(1, support)], uniform
// on [1, support]; trapezoid weights.
Nystrom nystrom_nodes(const RadialFn& v, double support, int n) {
    if (!(support > 0.0)) throw DomainError("Birman-Schwinger support must be positive");
    if (n < 16) throw DomainError("Birman-Schwinger needs at least 16 nodes");
    std::vector<double> x;
    const double inner_end = std::min(1.0, support);
    const int n_in = support > 1.0 ? std::max(8, static_cast<int>(n * 0.5)) : n;
    for (int i = 1; i <= n_in; ++i) {
        const double t = static_cast<double>(i) / n_in;
        x.push_back(inner_end * t * t);
    }
    if (support > 1.0) {
        const int n_out = std::max(8, n - n_in);
        for (int i = 1; i <= n_out; ++i) x.push_back(1.0 + (support - 1.0) * i / n_out);
    }
    x.back() = support;
    std::vector<double> w(x.size(), 0.0);
    w[0] = 0.5 * x[0];
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    Nystrom out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double vm = std::max(0.0, -v(x[i]));
        if (vm > 0.0) {
            out.r.push_back(x[i]);
            out.s.push_back(std::sqrt(w[i] * vm));
        }
    }
    return out;
}

double top_eigenvalue(double alpha, const Nystrom& ny, double kappa) {
    const int n = static_cast<int>(ny.r.size());
    if (n == 0) return 0.0;
    const ResolventKernel G(alpha, kappa);
    std::vector<double> S(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i) {
            const double val = ny.s[i] * G(ny.r[i], ny.r[j]) * ny.s[j];
            S[static_cast<std::size_t>(j) * n + i] = val;
            S[static_cast<std::size_t>(i) * n + j] = val;
        }
    std::vector<double> w(n);
    std::vector<lapack_int> isuppz(2);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'L', n, S.data(), n, 0.0, 0.0, n, n, 0.0, &m,
                                           w.data(), nullptr, 1, isuppz.data());
    if (info != 0 || m != 1) throw NumericalError("dense eigensolver failed (info " + std::to_string(info) + ")");
    return w[0];
}

}  // namespace

double birman_schwinger_top(double alpha, const RadialFn& v, double support, double kappa, int nodes) {
    return top_eigenvalue(alpha, nystrom_nodes(v, support, nodes), kappa);
}

BsResult birman_schwinger_kappa(double alpha, const RadialFn& v, double support, const BsOptions& opt) {
    if (!v) throw DomainError("Birman-Schwinger needs a potential");
    const Nystrom ny = nystrom_nodes(v, support, opt.nodes);
    BsResult res;
    if (ny.r.empty()) return res;
    auto mu = [&](double u) {
        ++res.evaluations;
        return top_eigenvalue(alpha, ny, std::exp(u)) - 1.0;
    };
    const double u_lo = std::log(opt.kappa_lo);
    const double f_lo = mu(u_lo);
    if (f_lo < 0.0) return res;
    double u_hi = 0.0;
    double f_hi = mu(u_hi);
    for (int i = 0; f_hi >= 0.0; ++i) {
        if (i > 200) throw NumericalError("no upper bracket for the Birman-Schwinger root");
        u_hi += std::log(2.0);
        f_hi = mu(u_hi);
    }
    double a = u_lo, fa = f_lo;
    if (u_hi > 0.0) a = u_hi - std::log(2.0), fa = mu(a);
    if (fa < 0.0) a = u_lo, fa = f_lo;
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(48);
    const auto br = boost::math::tools::toms748_solve(mu, a, u_hi, fa, f_hi, tol, iters);
    const double u = 0.5 * (br.first + br.second);
    res.kappa = std::exp(u);
    res.top_eigenvalue = top_eigenvalue(alpha, ny, res.kappa);
    res.bound = true;
    if (std::abs(res.top_eigenvalue - 1.0) > std::max(opt.tol, 1e-12))
        throw NumericalError("Birman-Schwinger root not resolved to tolerance (|mu-1| = " +
                             std::to_string(std::abs(res.top_eigenvalue - 1.0)) + ")");
    return res;
}

}  // namespace radpauli
