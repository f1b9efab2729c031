#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lidonor/dynamics.hpp"
#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;
using namespace lidonor::units;
using std::numbers::pi;

namespace {

RegisterSpec single_donor(double eps, double t_k = 0.0) {
    RegisterSpec spec;
    spec.n = 1;
    spec.positions = {{0, 0, 0}};
    spec.epsilon = {eps};
    spec.temperature = t_k;
    return spec;
}

RegisterSpec donor_pair(double r_nm, double eps, RegisterMode mode,
                        double t_k = 0.0) {
    RegisterSpec spec;
    spec.n = 2;
    spec.positions = {{0, 0, 0}, {nm_to_cm(r_nm), 0, 0}};
    spec.epsilon = {eps, eps};
    spec.mode = mode;
    spec.temperature = t_k;
    return spec;
}

}  // namespace

TEST_CASE("resonant pi pulse inverts a single donor") {
    MaterialParams p = build_materials();
    Register reg = build_register(single_donor(0.2), p);
    LevelStructure ls = reg.levels[0];

    PulseSchedule s;
    s.pulses.push_back(x_rotation_pulse(pi, 1e5, ls, 0, p));
    s.total_time = s.pulses[0].duration;

    EvolveOptions opt;
    opt.dt = s.total_time / 4000.0;
    EvolutionResult res = evolve(reg, s, basis_density(reg, {0}), opt);

    double p1 = state_fidelity(res.final_state, basis_vector(reg, {1}));
    CHECK(p1 > 0.999);
    CHECK(res.trace_deviation < 1e-10);
}

TEST_CASE("resonant excitation transfer oscillates at g21") {
    MaterialParams p = build_materials();
    Register reg =
        build_register(donor_pair(50.0, 0.002, RegisterMode::three_level), p);
    REQUIRE(reg.pairs.size() == 1);
    double g21 = reg.pairs[0].c.g21;
    REQUIRE(std::abs(g21) > 0.0);

    // start in |1,2>, watch the swap to |2,1>
    double t_half = pi / std::abs(g21);
    PulseSchedule s;
    s.total_time = t_half;
    EvolveOptions opt;
    opt.dt = t_half / 6000.0;
    opt.with_dissipation = false;
    EvolutionResult res = evolve(reg, s, basis_density(reg, {1, 2}), opt);
    double swapped = state_fidelity(res.final_state, basis_vector(reg, {2, 1}));
    CHECK(swapped == doctest::Approx(1.0).epsilon(0.01));

    // full period returns the initial state
    s.total_time = 2.0 * t_half;
    res = evolve(reg, s, basis_density(reg, {1, 2}), opt);
    double back = state_fidelity(res.final_state, basis_vector(reg, {1, 2}));
    CHECK(back == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("density matrix invariants under driving and dissipation") {
    MaterialParams p = build_materials();
    Register reg = build_register(single_donor(0.2, 0.7), p);
    LevelStructure ls = reg.levels[0];

    PulseSchedule s;
    s.pulses.push_back(x_rotation_pulse(pi / 2.0, 1e5, ls, 0, p));
    s.total_time = 2.0 * s.pulses[0].duration;

    EvolveOptions opt;
    opt.dt = s.total_time / 2000.0;
    EvolutionResult res = evolve(reg, s, basis_density(reg, {0}), opt);

    CHECK(res.trace_deviation < 1e-9);
    Eigen::MatrixXcd d = res.final_state - res.final_state.adjoint();
    CHECK(d.norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(res.final_state);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
}

TEST_CASE("step halving converges") {
    MaterialParams p = build_materials();
    Register reg = build_register(single_donor(0.2), p);
    LevelStructure ls = reg.levels[0];

    PulseSchedule s;
    s.pulses.push_back(x_rotation_pulse(pi / 3.0, 1e5, ls, 0, p));
    s.total_time = s.pulses[0].duration;

    EvolveOptions coarse, fine;
    coarse.dt = s.total_time / 500.0;
    fine.dt = s.total_time / 1000.0;
    Eigen::MatrixXcd rho0 = basis_density(reg, {0});
    Eigen::MatrixXcd a = evolve(reg, s, rho0, coarse).final_state;
    Eigen::MatrixXcd b = evolve(reg, s, rho0, fine).final_state;
    CHECK((a - b).norm() < 1e-8);
}

TEST_CASE("far-detuned drive barely moves the state") {
    MaterialParams p = build_materials();
    Register reg = build_register(single_donor(0.2), p);
    LevelStructure ls = reg.levels[0];

    Pulse x = x_rotation_pulse(pi, 1e5, ls, 0, p);
    x.carrier = 2.0 * ls.omega10;  // detuning far above the Rabi rate
    PulseSchedule s;
    s.pulses.push_back(x);
    s.total_time = x.duration;

    EvolveOptions opt;
    opt.dt = s.total_time / 8000.0;
    EvolutionResult res = evolve(reg, s, basis_density(reg, {0}), opt);
    double p1 = state_fidelity(res.final_state, basis_vector(reg, {1}));
    CHECK(p1 < 0.01);
}

TEST_CASE("unitary propagator agrees with the master equation") {
    MaterialParams p = build_materials();
    Register reg =
        build_register(donor_pair(100.0, 0.2, RegisterMode::two_level), p);
    LevelStructure ls = reg.levels[0];

    PulseSchedule s;
    s.pulses.push_back(x_rotation_pulse(pi, 1e5, ls, 0, p));
    s.total_time = 4.0 * s.pulses[0].duration;

    Eigen::MatrixXcd u = propagator(reg, s, s.total_time / 20000.0);
    Eigen::MatrixXcd ue = propagator_exact(reg, s);
    CHECK(gate_fidelity_unitary(u, ue) == doctest::Approx(1.0).epsilon(1e-8));

    // the coherent evolution of a pure state matches U rho U^dag
    EvolveOptions opt;
    opt.dt = s.total_time / 20000.0;
    opt.with_dissipation = false;
    Eigen::MatrixXcd rho0 = basis_density(reg, {0, 1});
    Eigen::MatrixXcd rho = evolve(reg, s, rho0, opt).final_state;
    Eigen::MatrixXcd ref = ue * rho0 * ue.adjoint();
    CHECK((rho - ref).norm() < 1e-6);
}

TEST_CASE("gate fidelity of a unitary against itself is one") {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
    CHECK(gate_fidelity_unitary(u, u) == doctest::Approx(1.0).epsilon(1e-14));
    // global phase is ignored
    CHECK(gate_fidelity_unitary(std::complex<double>(0, 1) * u, u) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("undriven evolution relaxes toward detailed balance") {
    MaterialParams p = build_materials();
    Register reg = build_register(single_donor(0.2, 0.7), p);
    auto pops = steady_state_populations(reg);
    REQUIRE(pops.size() == 1);
    REQUIRE(pops[0].size() == 2);
    double ratio = pops[0][1] / pops[0][0];
    CHECK(ratio == doctest::Approx(0.37811037).epsilon(1e-6));
    double x = units::hbar * reg.levels[0].omega10 /
               (units::k_boltzmann * 0.7);
    CHECK(ratio == doctest::Approx(std::exp(-x)).epsilon(1e-8));

    // the integrator actually lands there
    PulseSchedule s;
    s.total_time = 20.0 / reg.rates[0].w10_down;
    EvolveOptions opt;
    opt.dt = s.total_time / 50000.0;
    EvolutionResult res = evolve(reg, s, basis_density(reg, {1}), opt);
    double p1 = state_fidelity(res.final_state, basis_vector(reg, {1}));
    double p0 = state_fidelity(res.final_state, basis_vector(reg, {0}));
    CHECK(p1 / p0 == doctest::Approx(ratio).epsilon(1e-3));
}

TEST_CASE("register validation") {
    MaterialParams p = build_materials();
    RegisterSpec bad = donor_pair(100.0, 0.2, RegisterMode::two_level);
    bad.positions.pop_back();
    CHECK_THROWS_AS(build_register(bad, p), ValidationError);
    RegisterSpec dup = donor_pair(100.0, 0.2, RegisterMode::two_level);
    dup.positions[1] = dup.positions[0];
    CHECK_THROWS_AS(build_register(dup, p), ValidationError);
}
