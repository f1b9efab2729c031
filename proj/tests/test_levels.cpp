#include "doctest.h"

#include <cmath>

#include "lidonor/errors.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;

TEST_CASE("epsilon from stress at the three-level benchmark") {
    MaterialParams p = build_materials();
    double eps = epsilon_from_stress(1.3e5, p);
    CHECK(eps == doctest::Approx(0.00130).epsilon(0.01));
    CHECK(stress_from_epsilon(eps, p) == doctest::Approx(1.3e5).epsilon(1e-9));
}

TEST_CASE("manifold structure at epsilon = 0.2") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.2, p);

    CHECK(ls.omega10 ==
          doctest::Approx(0.2 * p.delta_c / units::hbar).epsilon(1e-12));
    CHECK(ls.omega21 == doctest::Approx(2.0 * ls.omega10).epsilon(1e-12));

    const ValleyState& g = ground_state(ls);
    const ValleyState& s = singlet_state(ls);
    const ValleyState& t = triplet_even_state(ls);
    CHECK(g.parity == Parity::odd);
    CHECK(s.parity == Parity::even);
    CHECK(t.parity == Parity::even);

    // ground state lives on the z valleys only
    for (int j = 0; j < 4; ++j) CHECK(g.alpha[j] == doctest::Approx(0.0));
    CHECK(g.alpha[4] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(g.alpha[5] == doctest::Approx(-1.0 / std::sqrt(2.0)));

    // |1> normalization: 4 b^2 + 2 a^2 = 1
    CHECK(4.0 * ls.b_coef * ls.b_coef + 2.0 * ls.a_coef * ls.a_coef ==
          doctest::Approx(1.0).epsilon(1e-12));

    // orthonormality of all states
    for (std::size_t i = 0; i < ls.states.size(); ++i)
        for (std::size_t j = 0; j < ls.states.size(); ++j) {
            double d = 0.0;
            for (int k = 0; k < 6; ++k)
                d += ls.states[i].alpha[k] * ls.states[j].alpha[k];
            CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
        }

    // level spacings 0 : 1 : 3 in units of eps delta_c
    CHECK(s.energy - g.energy ==
          doctest::Approx(0.2 * p.delta_c).epsilon(1e-10));
    CHECK(t.energy - g.energy ==
          doctest::Approx(3.0 * 0.2 * p.delta_c).epsilon(1e-10));
}

TEST_CASE("zero stress collapses the splitting") {
    MaterialParams p = build_materials();
    LevelStructure ls = manifold(0.0, p);
    CHECK(ls.omega10 == doctest::Approx(0.0));
}

TEST_CASE("epsilon out of linear range rejected") {
    MaterialParams p = build_materials();
    CHECK_THROWS_AS(manifold(3.0, p), ValidationError);
    CHECK_THROWS_AS(manifold(-0.1, p), ValidationError);
}
