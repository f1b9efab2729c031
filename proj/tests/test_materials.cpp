#include "doctest.h"

#include "lidonor/errors.hpp"
#include "lidonor/materials.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;

TEST_CASE("default constants and derived quantities") {
    MaterialParams p = build_materials();
    CHECK(p.xi_u == doctest::Approx(8.77 * units::erg_per_ev));
    CHECK(p.rho == doctest::Approx(2.329));
    CHECK(p.a_par == doctest::Approx(14.2e-8));
    CHECK(p.delta_c == doctest::Approx(units::mev_to_erg(1.76 / 6.0)));

    DerivedParams d = derive(p);
    CHECK(d.kappa0 == doctest::Approx(3.4708e7).epsilon(1e-4));
    CHECK(d.sigma == doctest::Approx(0.125428).epsilon(1e-5));
    // hbar u_t / (a_perp k_B): close to but not exactly the quoted 19 K
    CHECK(d.t0_check == doctest::Approx(16.53).epsilon(1e-3));
}

TEST_CASE("overrides apply in API units") {
    MaterialParams p = build_materials({{"xi_u_eV", 9.0}, {"a_par_angstrom", 15.0}});
    CHECK(p.xi_u == doctest::Approx(9.0 * units::erg_per_ev));
    CHECK(p.a_par == doctest::Approx(15.0e-8));
    // untouched fields keep defaults
    CHECK(p.u_t == doctest::Approx(5.41e5));
}

TEST_CASE("unknown override key rejected") {
    CHECK_THROWS_AS(build_materials({{"bogus_key", 1.0}}), ConfigError);
}

TEST_CASE("unphysical values rejected") {
    CHECK_THROWS_AS(build_materials({{"rho_g_cm3", -1.0}}), ValidationError);
    CHECK_THROWS_AS(build_materials({{"u_t_cm_s", 0.0}}), ValidationError);
    // transverse speed must stay below longitudinal
    CHECK_THROWS_AS(build_materials({{"u_t_cm_s", 1e6}, {"u_l_cm_s", 9e5}}),
                    ValidationError);
}

TEST_CASE("config json parsing") {
    Overrides o = parse_config_json(R"({"xi_u_eV": 8.0, "t0_k": 20.0})");
    CHECK(o.size() == 2);
    CHECK(o.at("xi_u_eV") == doctest::Approx(8.0));
    CHECK_THROWS_AS(parse_config_json("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_config_json(R"({"xi_u_eV": "eight"})"), ConfigError);
}
