#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lidonor/coupling.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/materials.hpp"
#include "lidonor/operating.hpp"
#include "lidonor/oracles.hpp"
#include "lidonor/pulses.hpp"
#include "lidonor/rates.hpp"
#include "lidonor/units.hpp"

namespace py = pybind11;
using namespace lidonor;

PYBIND11_MODULE(_lidonor, m) {
    m.doc() = "stress-tuned Li donor qubits in Si";

    py::class_<MaterialParams>(m, "MaterialParams")
        .def_readwrite("xi_u", &MaterialParams::xi_u)
        .def_readwrite("xi_d", &MaterialParams::xi_d)
        .def_readwrite("rho", &MaterialParams::rho)
        .def_readwrite("u_t", &MaterialParams::u_t)
        .def_readwrite("u_l", &MaterialParams::u_l)
        .def_readwrite("s11", &MaterialParams::s11)
        .def_readwrite("s12", &MaterialParams::s12)
        .def_readwrite("a_si", &MaterialParams::a_si)
        .def_readwrite("a_par", &MaterialParams::a_par)
        .def_readwrite("a_perp", &MaterialParams::a_perp)
        .def_readwrite("delta_c", &MaterialParams::delta_c)
        .def_readwrite("nu0", &MaterialParams::nu0)
        .def_readwrite("t0", &MaterialParams::t0);

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("kappa0", &DerivedParams::kappa0)
        .def_readonly("sigma", &DerivedParams::sigma)
        .def_readonly("t0_check", &DerivedParams::t0_check);

    m.def("build_materials", &build_materials,
          py::arg("overrides") = Overrides{},
          "material constants in CGS; override keys use API units, "
          "e.g. {'xi_u_eV': 8.77}");
    m.def("derive", &derive);

    py::class_<LevelStructure>(m, "LevelStructure")
        .def_readonly("epsilon", &LevelStructure::epsilon)
        .def_readonly("a_coef", &LevelStructure::a_coef)
        .def_readonly("b_coef", &LevelStructure::b_coef)
        .def_readonly("omega10", &LevelStructure::omega10)
        .def_readonly("omega21", &LevelStructure::omega21);

    m.def("manifold", &manifold, py::arg("epsilon"), py::arg("params"));
    m.def("epsilon_from_stress", &epsilon_from_stress);
    m.def("stress_from_epsilon", &stress_from_epsilon);

    py::class_<RateResult>(m, "RateResult")
        .def_readonly("total", &RateResult::total)
        .def_readonly("branch_l", &RateResult::branch_l)
        .def_readonly("branch_t1", &RateResult::branch_t1)
        .def_readonly("branch_t2", &RateResult::branch_t2)
        .def_readonly("warning", &RateResult::warning);

    m.def("decay_rate_10", &decay_rate_closed_form_10, py::arg("epsilon"),
          py::arg("params"), "closed-form W10, 1/s");
    m.def(
        "decay_rate_21",
        [](double eps, const MaterialParams& p) {
            return decay_rate_oracle_21(eps, p);
        },
        py::arg("epsilon"), py::arg("params"), "quadrature W21, 1/s");
    m.def("suppression_factor_10", &suppression_factor_10);
    m.def("dephasing_rate", &dephasing_rate, py::arg("temperature_k"),
          py::arg("params"));

    py::class_<CouplingSet>(m, "CouplingSet")
        .def_readonly("g10", &CouplingSet::g10)
        .def_readonly("g21", &CouplingSet::g21)
        .def_readonly("j_ising", &CouplingSet::j_ising);

    m.def("couplings", &couplings_closed_form, py::arg("r_cm"),
          py::arg("epsilon"), py::arg("params"), py::arg("w21"),
          "closed-form g10, g21, J at separation R, rad/s");
    m.def("ising_coupling", &ising_coupling);
    m.def("gamma_factor", &gamma_factor);

    m.def("quality_two_level", &quality_two_level, py::arg("r_cm"),
          py::arg("epsilon"), py::arg("params"));
    m.def("quality_three_level", &quality_three_level, py::arg("r_cm"),
          py::arg("epsilon"), py::arg("temperature_k"), py::arg("params"));
    m.def("operating_temperature", &operating_temperature, py::arg("q_target"),
          py::arg("r_cm"), py::arg("epsilon"), py::arg("params"),
          py::arg("printed_form") = false);

    m.def("rabi_frequency_x", &rabi_frequency_x, py::arg("amplitude"),
          py::arg("omega10"), py::arg("params"), "rad/s");

    py::class_<OracleReport>(m, "OracleReport")
        .def_readonly("quantity", &OracleReport::quantity)
        .def_readonly("production", &OracleReport::production)
        .def_readonly("oracle", &OracleReport::oracle)
        .def_readonly("deviation", &OracleReport::deviation)
        .def_readonly("threshold", &OracleReport::threshold)
        .def_readonly("pass_", &OracleReport::pass)
        .def_readonly("fitted_exponent", &OracleReport::fitted_exponent)
        .def("__repr__", &format_report_line);

    m.def(
        "run_verification",
        [](const MaterialParams& p) { return run_verification(p); },
        py::arg("params"));

    m.attr("hbar") = units::hbar;
    m.attr("k_boltzmann") = units::k_boltzmann;
    m.def("nm_to_cm", &units::nm_to_cm);
    m.def("cm_to_nm", &units::cm_to_nm);
}
