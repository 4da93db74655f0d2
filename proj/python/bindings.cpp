#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/specfun.hpp"
#include "radpauli/spectral.hpp"
#include "radpauli/verify.hpp"

namespace py = pybind11;
using namespace radpauli;

PYBIND11_MODULE(_radpauli, m) {
    m.doc() = "Spectral tools for planar Pauli operators with radial magnetic fields";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    auto sf = m.def_submodule("specfun", "Modified Bessel functions of real order in [0, 2]");
    sf.def("bessel_i", &specfun::bessel_i, py::arg("nu"), py::arg("z"));
    sf.def("bessel_k", &specfun::bessel_k, py::arg("nu"), py::arg("z"));
    sf.def("bessel_i_scaled", &specfun::bessel_i_scaled, py::arg("nu"), py::arg("z"));
    sf.def("bessel_k_scaled", &specfun::bessel_k_scaled, py::arg("nu"), py::arg("z"));
    sf.def("wronskian_residual", &specfun::wronskian_residual, py::arg("nu"), py::arg("z"));

    py::class_<FieldProfile>(m, "FieldProfile")
        .def_static("zero", &FieldProfile::zero)
        .def_static("gaussian", &FieldProfile::gaussian, py::arg("amplitude"), py::arg("scale") = 1.0)
        .def_static("compact_bump", &FieldProfile::compact_bump, py::arg("amplitude"), py::arg("scale") = 1.0)
        .def_static("power_tail", &FieldProfile::power_tail, py::arg("amplitude"), py::arg("scale"),
                    py::arg("decay"))
        .def_static("ac_circle", &FieldProfile::ac_circle, py::arg("alpha"), py::arg("scale") = 1.0)
        .def_static("gaussian_with_flux", &FieldProfile::gaussian_with_flux, py::arg("alpha"),
                    py::arg("scale") = 1.0)
        .def("field", &FieldProfile::field, py::arg("r"))
        .def("negated", &FieldProfile::negated)
        .def_property_readonly("kind", [](const FieldProfile& p) { return std::string(to_string(p.kind)); })
        .def_readonly("amplitude", &FieldProfile::amplitude)
        .def_readonly("scale", &FieldProfile::scale)
        .def_readonly("decay", &FieldProfile::decay)
        .def("__repr__", [](const FieldProfile& p) {
            return "FieldProfile(" + std::string(to_string(p.kind)) + ", flux=" + std::to_string(flux_alpha(p)) + ")";
        });
    m.def("flux_alpha", &flux_alpha, py::arg("profile"));
    m.def("potential_h", &potential_h, py::arg("profile"), py::arg("r"));

    py::class_<RadialPotential>(m, "RadialPotential")
        .def_static("zero", &RadialPotential::zero)
        .def_static("gaussian_well", &RadialPotential::gaussian_well, py::arg("depth"), py::arg("width") = 1.0)
        .def_static("step_well", &RadialPotential::step_well, py::arg("depth"), py::arg("radius") = 1.0)
        .def("__call__", &RadialPotential::operator(), py::arg("r"))
        .def("scaled", &RadialPotential::scaled, py::arg("lam"))
        .def_readonly("support", &RadialPotential::support);

    py::class_<LTOptions>(m, "LTOptions")
        .def(py::init<>())
        .def_readwrite("r_max", &LTOptions::r_max)
        .def_readwrite("h0", &LTOptions::h0)
        .def_readwrite("grading", &LTOptions::grading)
        .def_readwrite("mode_tol", &LTOptions::mode_tol)
        .def_readwrite("min_modes", &LTOptions::min_modes)
        .def_readwrite("max_modes", &LTOptions::max_modes);

    py::class_<LTReport>(m, "LTReport")
        .def_readonly("alpha", &LTReport::alpha)
        .def_readonly("gamma", &LTReport::gamma)
        .def_readonly("lhs", &LTReport::lhs)
        .def_readonly("lhs_plus", &LTReport::lhs_plus)
        .def_readonly("lhs_minus", &LTReport::lhs_minus)
        .def_readonly("term1", &LTReport::term1)
        .def_readonly("term2", &LTReport::term2)
        .def_readonly("ratio", &LTReport::ratio)
        .def_readonly("modes", &LTReport::modes)
        .def_readonly("grid_size", &LTReport::grid_size);
    m.def("lt_report",
          py::overload_cast<const FieldProfile&, const RadialPotential&, double, const LTOptions&>(&lt_report),
          py::arg("profile"), py::arg("v"), py::arg("gamma"), py::arg("options") = LTOptions{});

    py::class_<LTConstants>(m, "LTConstants")
        .def_readonly("L1", &LTConstants::L1)
        .def_readonly("L2", &LTConstants::L2)
        .def_readonly("objective", &LTConstants::objective)
        .def_readonly("feasible", &LTConstants::feasible);
    m.def("fit_lt_constants", &fit_lt_constants, py::arg("battery"));
    m.def("lt_certificate_violation", &lt_certificate_violation, py::arg("battery"), py::arg("constants"),
          py::arg("plus_only") = false);

    py::class_<CoefficientTriple>(m, "Coefficients")
        .def_readonly("A", &CoefficientTriple::A)
        .def_property_readonly("f", &CoefficientTriple::f)
        .def_property_readonly("g", &CoefficientTriple::g);
    m.def("coefficients", &coefficients, py::arg("alpha"), py::arg("kappa"));
    m.def("resolvent_kernel", &resolvent_kernel, py::arg("alpha"), py::arg("kappa"), py::arg("r"), py::arg("rp"));
    m.def("gamma_kernel", &gamma_kernel, py::arg("alpha"), py::arg("kappa"), py::arg("r"), py::arg("rp"));
    m.def("kernel_bound_ratio", &kernel_bound_ratio, py::arg("alpha"), py::arg("kappa"), py::arg("r"),
          py::arg("rp"));
    m.def(
        "kernel_sweep_max",
        [](double alpha, bool extended) {
            const SweepMax s = kernel_sweep_max(alpha, extended ? extended_sweep() : standard_sweep());
            return py::make_tuple(s.gamma_ratio, s.raw_ratio);
        },
        py::arg("alpha"), py::arg("extended") = false, "(max Gamma ratio, max raw ratio) over the sweep");

    m.def(
        "birman_schwinger_kappa",
        [](double alpha, const RadialPotential& v) {
            const BsResult r = birman_schwinger_kappa(alpha, v.fn, v.support);
            return r.bound ? py::cast(r.kappa) : py::none();
        },
        py::arg("alpha"), py::arg("v"), "kappa of the T_alpha ground state, or None without a bound state");

    m.def("q_alpha", &q_alpha, py::arg("alpha"));
    m.def("theta_formula", &theta_formula, py::arg("alpha"));
    m.def(
        "hardy_q_estimate",
        [](double alpha, int sign, int mode, double r_max, int n, double grading) {
            return hardy_q_estimate(alpha, sign, mode, make_grid(r_max, n, grading));
        },
        py::arg("alpha"), py::arg("sign"), py::arg("m"), py::arg("r_max") = 1e3, py::arg("n") = 1500,
        py::arg("grading") = 1.01);

    m.def("weak_coupling_constant", &weak_coupling_constant, py::arg("profile"), py::arg("v"));
    m.def(
        "weak_coupling_fit",
        [](const FieldProfile& p, const RadialPotential& v, const std::vector<double>& lambdas) {
            const WeakCoupling w = weak_coupling_fit(p, v, lambdas);
            return py::dict(py::arg("exponent") = w.fit.exponent, py::arg("c_fit") = w.c_fit,
                            py::arg("c_predicted") = w.c_predicted, py::arg("energies") = w.fit.y);
        },
        py::arg("profile"), py::arg("v"), py::arg("lambdas"));

    py::enum_<FailureFamily>(m, "FailureFamily")
        .value("SEMICLASSICAL", FailureFamily::Semiclassical)
        .value("WEAK", FailureFamily::Weak);
    m.def("one_term_quotient", &one_term_quotient, py::arg("alpha"), py::arg("family"), py::arg("param"));
    m.def("one_term_rate", &one_term_rate, py::arg("alpha"), py::arg("family"));
    m.def("counterexample_ratio", &counterexample_ratio_direct, py::arg("alpha"), py::arg("R"));

    m.def(
        "ac_check",
        [](const FieldProfile& p) {
            const AcCheck r = ac_check(p);
            return py::dict(py::arg("passed") = r.pass, py::arg("min_eigenvalue") = r.min_eigenvalue,
                            py::arg("form_residual") = r.form_residual,
                            py::arg("resonance_residual") = r.resonance_residual,
                            py::arg("jump_residual") = r.jump_residual);
        },
        py::arg("profile"));
}
