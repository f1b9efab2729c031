#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lidonor/envelope.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/quadrature.hpp"

namespace lidonor {

struct RateResult {
    double total = 0.0;       // 1/s
    double branch_l = 0.0;
    double branch_t1 = 0.0;
    double branch_t2 = 0.0;
    std::optional<std::string> warning;  // long-wavelength validity etc.
};

// Eq.-style closed form for the |1> -> |0> decay rate:
//   W10 = (2/35) a^2 (a_par kappa0)^2 / [1+(a_par kappa0/2)^2]^6
//         * Xi_u^2 omega10^5 a_par^2 / (pi hbar rho u_t^7)
// Transverse-branch, Xi_u-only result; carries a validity warning when
// 2 pi u_t / omega10 is not >> a_par.
RateResult decay_rate_closed_form_10(double epsilon, const MaterialParams& p);

// The small umklapp suppression factor 8 a^2/35 / (a_par kappa0/2)^10.
double suppression_factor_10(double epsilon, const MaterialParams& p);

enum class BranchFilter { all, transverse_only, longitudinal_only };

// Golden-rule emission rate by angular quadrature over the
// energy-conserving shell |q| = omega/u_nu, per branch.
RateResult decay_rate_oracle(const ValleyState& to, const ValleyState& from,
                             double omega, const MaterialParams& p,
                             const QuadSettings& quad = {},
                             BranchFilter filter = BranchFilter::all,
                             const TermFlags& flags = {});

// Dephasing from quasi-elastic phonon scattering: nu0 (T/T0)^11.
double dephasing_rate(double temperature_k, const MaterialParams& p);

// Planck occupation of a phonon at omega.
double planck_n(double omega, double temperature_k);

// |2> -> |1> rate has no closed form; computed by the oracle and cached
// on an epsilon grid with monotone log-log interpolation.
class W21Table {
  public:
    W21Table(const MaterialParams& p, const QuadSettings& quad = {},
             double eps_min = 1e-4, double eps_max = 2.9, int n_grid = 25);
    double rate(double epsilon) const;  // 1/s

  private:
    std::vector<double> log_eps_;
    std::vector<double> log_w_;
};

// Convenience: oracle W21 at a single epsilon (no cache).
RateResult decay_rate_oracle_21(double epsilon, const MaterialParams& p,
                                const QuadSettings& quad = {});
RateResult decay_rate_oracle_10(double epsilon, const MaterialParams& p,
                                const QuadSettings& quad = {});

}  // namespace lidonor
