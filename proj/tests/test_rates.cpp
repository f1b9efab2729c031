#include "doctest.h"

#include <cmath>

#include "lidonor/rates.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;

TEST_CASE("suppression factor near 1e-5") {
    MaterialParams p = build_materials();
    CHECK(suppression_factor_10(0.002, p) ==
          doctest::Approx(9.228e-6).epsilon(0.01));
}

TEST_CASE("closed-form lifetime magnitudes") {
    MaterialParams p = build_materials();
    double tau10 = 1.0 / decay_rate_closed_form_10(0.2, p).total;
    CHECK(tau10 == doctest::Approx(1.19).epsilon(0.02));
    CHECK(decay_rate_closed_form_10(0.5, p).total ==
          doctest::Approx(89.0).epsilon(0.02));
}

TEST_CASE("closed form tracks the transverse-branch quadrature") {
    MaterialParams p = build_materials();
    for (double eps : {0.1, 0.2, 0.5}) {
        double closed = decay_rate_closed_form_10(eps, p).total;
        LevelStructure ls = manifold(eps, p);
        RateResult orac =
            decay_rate_oracle(ground_state(ls), singlet_state(ls), ls.omega10,
                              p, {}, BranchFilter::transverse_only);
        CHECK(closed / orac.total == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("oracle W21 benchmark values") {
    MaterialParams p = build_materials();
    CHECK(decay_rate_oracle_21(0.002, p).total ==
          doctest::Approx(56.93).epsilon(0.01));
    CHECK(decay_rate_oracle_21(0.5, p).total ==
          doctest::Approx(5.93e8).epsilon(0.01));
}

TEST_CASE("W21 cache interpolates the oracle") {
    MaterialParams p = build_materials();
    W21Table table(p);
    for (double eps : {0.003, 0.07, 0.31}) {
        double direct = decay_rate_oracle_21(eps, p).total;
        CHECK(table.rate(eps) == doctest::Approx(direct).epsilon(0.02));
    }
}

TEST_CASE("planck occupation and detailed balance ratio") {
    using namespace units;
    double omega = 1e10;
    double t = 0.5;
    double n = planck_n(omega, t);
    double x = hbar * omega / (k_boltzmann * t);
    CHECK(n == doctest::Approx(1.0 / (std::exp(x) - 1.0)).epsilon(1e-12));
    CHECK(planck_n(omega, 0.0) == doctest::Approx(0.0));
    // up/down ratio is the Boltzmann factor
    CHECK(n / (n + 1.0) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
}

TEST_CASE("dephasing follows the T^11 law") {
    MaterialParams p = build_materials();
    double r1 = dephasing_rate(0.1, p);
    double r2 = dephasing_rate(0.2, p);
    CHECK(r2 / r1 == doctest::Approx(std::pow(2.0, 11)).epsilon(1e-9));
    CHECK(dephasing_rate(p.t0, p) == doctest::Approx(p.nu0).epsilon(1e-12));
}

TEST_CASE("W10 frequency exponent is five") {
    MaterialParams p = build_materials();
    // closed form: ratio over a factor 2 in epsilon at fixed prefactors
    double w1 = decay_rate_closed_form_10(0.1, p).total;
    double w2 = decay_rate_closed_form_10(0.2, p).total;
    double slope = std::log(w2 / w1) / std::log(2.0);
    // a(eps) varies slowly; the omega^5 law dominates
    CHECK(slope == doctest::Approx(5.0).epsilon(0.02));
}
