#include "doctest.h"

#include <cmath>

#include "lidonor/oracles.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;
using namespace lidonor::units;

TEST_CASE("rate verification passes at benchmark stresses") {
    MaterialParams p = build_materials();
    for (double eps : {0.2, 0.5}) {
        OracleReport r = verify_rate(eps, p);
        CHECK(r.pass);
        CHECK(r.deviation < kRateAgreement);
    }
}

TEST_CASE("coupling verification: magnitudes and fitted exponents") {
    MaterialParams p = build_materials();

    OracleReport g10 = verify_coupling(CouplingKind::g10, nm_to_cm(100.0),
                                       0.2, p);
    CHECK(g10.pass);
    REQUIRE(g10.fitted_exponent.has_value());
    CHECK(*g10.fitted_exponent == doctest::Approx(-5.0).epsilon(0.02));

    OracleReport ising = verify_coupling(CouplingKind::ising, nm_to_cm(100.0),
                                         0.002, p);
    CHECK(ising.pass);
    REQUIRE(ising.fitted_exponent.has_value());
    CHECK(*ising.fitted_exponent == doctest::Approx(-3.0).epsilon(0.02));

    OracleReport g21 = verify_coupling(CouplingKind::g21, nm_to_cm(50.0),
                                       0.002, p);
    CHECK(g21.pass);
    REQUIRE(g21.fitted_exponent.has_value());
    CHECK(*g21.fitted_exponent == doctest::Approx(-3.0).epsilon(0.02));
}

TEST_CASE("refocusing residual vanishes for delta pulses") {
    MaterialParams p = build_materials();
    for (int n : {2, 3, 4}) {
        OracleReport r = verify_refocusing(n, 0, p);
        CHECK(r.pass);
        CHECK(r.deviation < kRefocusingResidual);
    }
    OracleReport off = verify_refocusing(4, 2, p);
    CHECK(off.pass);
}

TEST_CASE("verification battery runs clean") {
    MaterialParams p = build_materials();
    auto reports = run_verification(p);
    CHECK(reports.size() >= 6);
    for (const auto& r : reports) {
        CHECK(r.pass);
        CHECK(!format_report_line(r).empty());
        // lines are reproducible
        CHECK(format_report_line(r) == format_report_line(r));
    }
}
