#include <cmath>
#include <numeric>

#include <doctest.h>

#include "radpauli/errors.hpp"
#include "radpauli/operators.hpp"
#include "radpauli/spectral.hpp"

using namespace radpauli;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("graded grids keep r = 1 as a node") {
    const RadialGrid g = make_grid(50.0, 400, 1.01);
    REQUIRE(g.contains_one());
    CHECK(g.r[*g.one] == 1.0);
    CHECK(g.r.back() == 50.0);
    CHECK(g.size() == 400);
    const RadialGrid f = g.refined();
    CHECK(f.size() == 2 * g.size() - 1);
    REQUIRE(f.contains_one());
    CHECK(std::accumulate(f.weight.begin(), f.weight.end(), 0.0) == doctest::Approx(50.0 - f.r[0]));
    const RadialGrid h = make_grid_h0(1e3, 1e-3, 1.02);
    CHECK(h.r[1] - h.r[0] == doctest::Approx(1e-3).epsilon(0.5));
    CHECK_THROWS_AS(make_grid(0.5, 400, 1.01), DomainError);
    CHECK_THROWS_AS(grid_from_nodes({1.0, 0.5, 2.0}), DomainError);
}

TEST_CASE("exact inverse-square element integrals") {
    const double a = 0.3, b = 0.7, h = b - a;
    // \int N_a^2 / r^2 by a fine midpoint sum
    double aa = 0, ab = 0, bb = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double r = a + (i + 0.5) * h / n, na = (b - r) / h, nb = (r - a) / h, w = h / n / (r * r);
        aa += w * na * na, ab += w * na * nb, bb += w * nb * nb;
    }
    const auto q = inverse_square_element(a, b);
    CHECK(q[0] == doctest::Approx(aa).epsilon(1e-8));
    CHECK(q[1] == doctest::Approx(ab).epsilon(1e-8));
    CHECK(q[2] == doctest::Approx(bb).epsilon(1e-8));
}

TEST_CASE("assembled forms are symmetric positive with positive mass") {
    const RadialGrid g = make_grid(30.0, 300, 1.01);
    for (int m : {0, 1, -2}) {
        const ModeOperator op = assemble_mode(g, WeightKind::Model, 0.4, kUpper, m, nullptr, Form::Chiral);
        CHECK(op.size() == (m == 0 ? g.size() - 1 : g.size() - 2));
        for (double x : op.mass) CHECK(x > 0.0);
        CHECK(lowest_eigenvalue(op) > 0.0);
    }
}

TEST_CASE("without field the chiral and expanded forms coincide") {
    const RadialGrid g = make_grid(30.0, 300, 1.01);
    for (int m : {1, -1, 3}) {
        const ModeOperator c = assemble_mode(g, WeightKind::Model, 0.0, kLower, m, nullptr, Form::Chiral);
        const ModeOperator e = assemble_mode(g, WeightKind::Model, 0.0, kLower, m, nullptr, Form::Expanded);
        CHECK(max_abs_diff(c.diag, e.diag) <= 1e-10 * max_abs(e.diag));
        CHECK(max_abs_diff(c.off, e.off) <= 1e-10 * max_abs(e.diag));
    }
}

TEST_CASE("free disc eigenvalues approach the Bessel zeros") {
    const double R = 10.0;
    const RadialGrid g = make_grid(R, 2000, 1.0);
    const double j01 = 2.404825557695773, j11 = 3.8317059702075125;
    CHECK(lowest_eigenvalue(assemble_mode(g, WeightKind::Model, 0.0, kLower, 0)) ==
          doctest::Approx(j01 * j01 / (R * R)).epsilon(1e-4));
    CHECK(lowest_eigenvalue(assemble_mode(g, WeightKind::Model, 0.0, kLower, 1)) ==
          doctest::Approx(j11 * j11 / (R * R)).epsilon(1e-4));
}

TEST_CASE("exact weight with zero field is the flat weight") {
    const RadialGrid g = make_grid(20.0, 200, 1.01);
    const FieldProfile zero = FieldProfile::zero();
    const ModeOperator a = assemble_mode(g, WeightKind::ExactH, 0.0, kUpper, 1, nullptr, Form::Chiral, &zero);
    const ModeOperator b = assemble_mode(g, WeightKind::Model, 0.0, kUpper, 1, nullptr, Form::Chiral);
    CHECK(max_abs_diff(a.diag, b.diag) <= 1e-12 * max_abs(b.diag));
    CHECK(max_abs_diff(a.mass, b.mass) <= 1e-12 * max_abs(b.mass));
}

TEST_CASE("constants lie in the kernel of the m = 0 chiral form away from the wall") {
    const RadialGrid g = make_grid(100.0, 800, 1.01);
    const FieldProfile p = FieldProfile::gaussian_with_flux(0.6);
    const ModeOperator op = assemble_mode(g, WeightKind::ExactH, 0.6, kLower, 0, nullptr, Form::Chiral, &p);
    const std::vector<double> k1 = op.apply(std::vector<double>(op.size(), 1.0));
    for (std::size_t i = 0; i + 1 < op.size(); ++i) CHECK(std::abs(k1[i]) <= 1e-12 * std::abs(op.diag[i]));
}

TEST_CASE("T_0 is the m = 0 operator in the variable sqrt(r) phi") {
    const RadialGrid g = make_grid(40.0, 1500, 1.005);
    const RadialFn v = [](double r) { return r <= 2.0 ? -3.0 : 0.0; };
    const double e_t = lowest_eigenvalue(assemble_T_alpha(g, 0.0, v));
    const double e_m = lowest_eigenvalue(assemble_mode(g, WeightKind::Model, 0.0, kLower, 0, v));
    CHECK(e_t == doctest::Approx(e_m).epsilon(2e-3));
    CHECK(e_t < 0.0);
}

TEST_CASE("the point term at r = 1 lowers the T_alpha ground state") {
    const RadialGrid g = make_grid(40.0, 1500, 1.005);
    const RadialFn v = [](double r) { return r <= 1.0 ? -2.0 : 0.0; };
    const double e0 = lowest_eigenvalue(assemble_T_alpha(g, 0.0, v));
    const double e5 = lowest_eigenvalue(assemble_T_alpha(g, 0.5, v));
    CHECK(e5 < e0);
}

TEST_CASE("Dirichlet split drops the node at r = 1") {
    const RadialGrid g = make_grid(20.0, 400, 1.01);
    const ModeOperator op = assemble_T_alpha(g, 0.3);
    const auto [in, out] = dirichlet_split(op);
    CHECK(in.size() + out.size() + 1 == op.size());
    CHECK(in.r.back() < 1.0);
    CHECK(out.r.front() > 1.0);
    // Dirichlet bracketing: the split operator sits above the full one.
    CHECK(std::min(lowest_eigenvalue(in), lowest_eigenvalue(out)) >= lowest_eigenvalue(op));
}

TEST_CASE("weight tables") {
    const RadialGrid g = make_grid(10.0, 100, 1.0);
    const WeightTable w = weight_table(g, WeightKind::Smooth, 0.5, kUpper);
    for (std::size_t e = 0; e < w.mid.size(); ++e) {
        const double r = 0.5 * (g.r[e] + g.r[e + 1]);
        CHECK(w.mid[e] == doctest::Approx(std::sqrt(1.0 + r * r)));
    }
    const WeightTable c = weight_table(g, WeightKind::Canonical, 0.5, kUpper);
    CHECK(c.mid.front() == 1.0);
    CHECK(c.mid.back() == doctest::Approx(1.0 / (0.5 * (g.r[g.size() - 2] + g.r.back()))));
    CHECK_THROWS_AS(weight_table(g, WeightKind::ExactH, 0.5, kUpper), DomainError);
}
