#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lidonor/coupling.hpp"
#include "lidonor/materials.hpp"
#include "lidonor/quadrature.hpp"

namespace lidonor {

// PASS thresholds reflecting the closed forms' stated approximations
// (transverse dominance, long wavelength, static limit).
inline constexpr double kRateAgreement = 0.15;
inline constexpr double kCouplingAgreement = 0.20;
inline constexpr double kRefocusingResidual = 1e-9;

struct OracleReport {
    std::string quantity;
    double production = 0.0;
    double oracle = 0.0;
    // |production - oracle| / max(|oracle|, floor); floor = 1e-300 for
    // ratio comparisons, 1 for absolute residuals (refocusing).
    double deviation = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::optional<double> fitted_exponent;
    std::string fingerprint;  // settings echo, reproducible bit-for-bit
};

// Closed-form W10 against the transverse-branch golden-rule quadrature.
OracleReport verify_rate(double epsilon, const MaterialParams& p,
                         const QuadSettings& quad = {});

enum class CouplingKind { g10, g21, ising };

// Closed forms (Eqs.-style R^-5/R^-3 laws) against the static-limit
// momentum-space quadrature; magnitudes compared, and the R-exponent is
// fitted over the decade above r_cm.
OracleReport verify_coupling(CouplingKind kind, double r_cm, double epsilon,
                             const MaterialParams& p,
                             const QuadSettings& quad = {},
                             bool fit_exponent = true);

// Delta-pulse unitary product over the refocusing sign pattern on an
// R^-3 chain; reports the largest residual ZZ phase on unselected pairs.
OracleReport verify_refocusing(int n, int pair_first,
                               const MaterialParams& p);

// The battery behind `verify`: rates at eps = 0.2 and 0.5, the three
// couplings at their benchmark points, refocusing on 3- and 4-qubit
// chains.
std::vector<OracleReport> run_verification(const MaterialParams& p,
                                           const QuadSettings& quad = {});

std::string format_report_line(const OracleReport& r);

}  // namespace lidonor
