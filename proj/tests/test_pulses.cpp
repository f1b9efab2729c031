#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lidonor/errors.hpp"
#include "lidonor/pulses.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;
using namespace lidonor::units;
using std::numbers::pi;

TEST_CASE("rabi frequency benchmark and linearity") {
    MaterialParams p = build_materials();
    double omega10 = 2.0 * pi * 1e10;  // 10 GHz
    double f_rabi = rabi_frequency_x(1e5, omega10, p) / (2.0 * pi);
    CHECK(f_rabi == doctest::Approx(4.66e8).epsilon(0.01));
    CHECK(rabi_frequency_x(2e5, omega10, p) ==
          doctest::Approx(2.0 * rabi_frequency_x(1e5, omega10, p))
              .epsilon(1e-12));
    CHECK(rabi_frequency_x(1e5, 2.0 * omega10, p) ==
          doctest::Approx(2.0 * rabi_frequency_x(1e5, omega10, p))
              .epsilon(1e-12));
}

TEST_CASE("pi pulse duration at the stress benchmark") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.2, p);
    Pulse x = x_rotation_pulse(pi, 1e5, ls, 0, p);
    CHECK(s_to_ns(x.duration) == doctest::Approx(0.3783).epsilon(0.001));
    CHECK(x.kind == PulseKind::ac_stress);
    CHECK(x.carrier == doctest::Approx(ls.omega10));
    // pulses shorter than one carrier period break the RWA
    CHECK_THROWS_AS(x_rotation_pulse(pi, 1e8, ls, 0, p), ValidationError);
    CHECK_THROWS_AS(x_rotation_pulse(0.0, 1e5, ls, 0, p), ValidationError);
}

TEST_CASE("schedule validation") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.2, p);
    PulseSchedule s;
    s.pulses.push_back(x_rotation_pulse(pi, 1e5, ls, 0, p, 0.0));
    s.pulses.push_back(x_rotation_pulse(pi, 1e5, ls, 0, p, 1e-9));
    s.total_time = 2e-9;

    SUBCASE("valid") { CHECK_NOTHROW(validate_schedule(s)); }

    SUBCASE("same-target overlap rejected") {
        s.pulses[1].t_start = 1e-10;
        CHECK_THROWS_AS(validate_schedule(s), ValidationError);
    }
    SUBCASE("different targets may overlap") {
        s.pulses[1].t_start = 1e-10;
        s.pulses[1].target = 1;
        // keep time ordering
        CHECK_NOTHROW(validate_schedule(s));
    }
    SUBCASE("pulse past the end rejected") {
        s.total_time = 1e-9;
        CHECK_THROWS_AS(validate_schedule(s), ValidationError);
    }
    SUBCASE("unsorted pulses rejected") {
        std::swap(s.pulses[0], s.pulses[1]);
        CHECK_THROWS_AS(validate_schedule(s), ValidationError);
    }
    SUBCASE("negative duration rejected") {
        s.pulses[0].duration = -1e-9;
        CHECK_THROWS_AS(validate_schedule(s), ValidationError);
    }
}

TEST_CASE("refocusing sign patterns") {
    for (int n : {2, 3, 4, 6}) {
        for (int pf = 0; pf + 1 < n; ++pf) {
            auto signs = refocusing_signs(n, pf);
            int slots = static_cast<int>(signs[0].size());
            // selected pair stays constant
            for (int i = 0; i < slots; ++i) {
                CHECK(signs[pf][i] == 1);
                CHECK(signs[pf + 1][i] == 1);
            }
            // all pairs except the selected one integrate to zero
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    int acc = 0;
                    for (int i = 0; i < slots; ++i)
                        acc += signs[a][i] * signs[b][i];
                    if (a == pf && b == pf + 1)
                        CHECK(acc == slots);
                    else
                        CHECK(acc == 0);
                }
            // flip instants of different qubits never coincide
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    for (int i = 1; i < slots; ++i) {
                        bool fa = signs[a][i] != signs[a][i - 1];
                        bool fb = signs[b][i] != signs[b][i - 1];
                        CHECK_FALSE((fa && fb));
                    }
                }
            // even flip count per qubit (no closing pulse needed)
            for (int a = 0; a < n; ++a) {
                int flips = 0;
                for (int i = 1; i < slots; ++i)
                    if (signs[a][i] != signs[a][i - 1]) ++flips;
                CHECK(flips % 2 == 0);
                CHECK(signs[a][0] == 1);
                CHECK(signs[a][slots - 1] == 1);
            }
        }
    }
    CHECK_THROWS_AS(refocusing_signs(1, 0), ValidationError);
    CHECK_THROWS_AS(refocusing_signs(4, 3), ValidationError);
}

TEST_CASE("refocusing sequence structure") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.2, p);
    double tau2 = 1e-5;
    double tau1 = 2e-8;
    PulseSchedule s = refocusing_sequence(4, 1, tau2, tau1, 2e4, ls, p);
    CHECK(s.total_time == doctest::Approx(tau2));
    // two refocused qubits with 2 and 4 flips, 6 segments per flip
    CHECK(s.pulses.size() == 6 * 6);
    for (const Pulse& pu : s.pulses) {
        CHECK(pu.kind == PulseKind::ac_stress);
        CHECK((pu.target == 0 || pu.target == 3));
    }
    // window too wide for the slot grid
    CHECK_THROWS_AS(refocusing_sequence(4, 1, tau2, tau2 / 10.0, 2e4, ls, p),
                    ValidationError);
}

TEST_CASE("phase gate pulse converts detuning to stress") {
    MaterialParams p = build_materials();
    Pulse dc = phase_gate_pulse(1e8, 5e-9, 0, 0.2, p);
    CHECK(dc.kind == PulseKind::dc_stress);
    CHECK(dc.duration == doctest::Approx(5e-9));
    // the stress increment reproduces the requested frequency shift
    double eps0 = 0.2;
    double f0 = stress_from_epsilon(eps0, p);
    double eps1 = epsilon_from_stress(f0 + dc.amplitude, p);
    double domega = (eps1 - eps0) * p.delta_c / units::hbar;
    CHECK(domega == doctest::Approx(1e8).epsilon(1e-6));
}

TEST_CASE("ret gate schedule") {
    MaterialParams p = build_materials();
    double g21 = 2.58e7;
    PulseSchedule s =
        ret_gate_schedule(0, 1, pi / 2.0, 0.2, 0.002, 1e-7, g21, p);
    CHECK(s.pulses.size() == 4);
    CHECK(s.pulses[0].kind == PulseKind::ramp_epsilon);
    CHECK(s.total_time ==
          doctest::Approx(2e-7 + (pi / 2.0) / g21).epsilon(1e-9));
    // too-fast ramp violates adiabaticity
    CHECK_THROWS_AS(
        ret_gate_schedule(0, 1, pi / 2.0, 0.2, 0.002, 1e-12, g21, p),
        ValidationError);
}

TEST_CASE("schedule json round trip") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.2, p);
    ScheduleFile f;
    f.reg.n = 2;
    f.reg.spacing_nm = 80.0;
    f.reg.epsilon0 = 0.2;
    f.schedule.pulses.push_back(x_rotation_pulse(pi, 1e5, ls, 0, p));
    f.schedule.pulses.push_back(
        phase_gate_pulse(1e8, 5e-9, 1, 0.2, p, ns_to_s(2.0)));
    f.schedule.total_time = ns_to_s(10.0);

    nlohmann::json doc = schedule_to_json(f);
    ScheduleFile g = schedule_from_json(doc);
    CHECK(g.reg.n == 2);
    CHECK(g.reg.spacing_nm == doctest::Approx(80.0));
    REQUIRE(g.schedule.pulses.size() == 2);
    CHECK(g.schedule.pulses[0].kind == PulseKind::ac_stress);
    CHECK(g.schedule.pulses[0].duration ==
          doctest::Approx(f.schedule.pulses[0].duration).epsilon(1e-12));
    CHECK(g.schedule.pulses[0].carrier ==
          doctest::Approx(ls.omega10).epsilon(1e-12));
    CHECK(g.schedule.pulses[1].kind == PulseKind::dc_stress);
    CHECK(g.schedule.total_time == doctest::Approx(f.schedule.total_time));
}

TEST_CASE("reserved pulse kind rejected") {
    CHECK_THROWS_AS(pulse_kind_from_name("stark"), ConfigError);
    CHECK_THROWS_AS(pulse_kind_from_name("nonsense"), ConfigError);
    CHECK(pulse_kind_from_name("ac_stress") == PulseKind::ac_stress);
    CHECK(pulse_kind_name(PulseKind::ramp_epsilon) == "ramp_epsilon");
}
