#pragma once

#include <string>
#include <vector>

#include "lidonor/materials.hpp"
#include "lidonor/rates.hpp"

namespace lidonor {

struct OperatingPoint {
    double epsilon = 0.0;
    double r_cm = 0.0;
    double temperature_k = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
};

// Two-level quality q = 1/(tau2 W10) with tau2 = pi/|J|; algebraically
// equal to the closed form below.
double quality_two_level(double r_cm, double epsilon, const MaterialParams& p);

// The same quantity written out:
//   35 [1+(a_par kappa0/2)^2]^6 u_t^5 (1 - 5/3 (u_t/u_l)^2)
//   / (64 pi a^2(eps) (a_par kappa0)^2 R^3 omega10^5 a_par^2).
double quality_two_level_closed(double r_cm, double epsilon,
                                const MaterialParams& p);

// Three-level quality q = gamma/(n21(T)+1) (u_t/(omega21 R))^3, the ratio
// g21/[(n21+1) W21]; the W21 dependence cancels against Eq.-(9) g21.
double quality_three_level(double r_cm, double epsilon, double temperature_k,
                           const MaterialParams& p);

// Exact inversion of the three-level quality:
//   T* = -hbar omega21 / (k_B ln(1 - q/(gamma x^3))), x = u_t/(omega21 R).
// With printed_form = true, evaluates the published variant
//   T* = -hbar omega21 / (3 k_B ln(1 - q/(3 gamma) (omega21 R/u_t)))
// instead; that variant is dimensionally inconsistent with the quality
// expression and fails the round trip, so it is off by default and kept
// only for side-by-side comparison.
double operating_temperature(double q_target, double r_cm, double epsilon,
                             const MaterialParams& p,
                             bool printed_form = false);

enum class SweepKind {
    fig1_lifetimes,
    fig3_temperature,
    coupling_vs_r,
    rates_vs_omega
};

SweepKind sweep_kind_from_name(const std::string& name);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// (eps, hbar_omega10_mev, tau10_s, tau21_s); tau21 from the W21 cache.
Table sweep_lifetimes(const std::vector<double>& eps_grid,
                      const MaterialParams& p, const W21Table& w21);

// (r_nm, q_target, t_star_mk) at fixed hbar omega21; rows sorted by the
// R grid then by q.
Table sweep_operating_temperature(const std::vector<double>& r_nm_grid,
                                  const std::vector<double>& q_targets,
                                  double homega21_mev,
                                  const MaterialParams& p);

// (r_nm, g10_rad_s, g21_rad_s, j_rad_s) closed forms at fixed epsilon.
Table sweep_coupling_vs_r(const std::vector<double>& r_nm_grid, double epsilon,
                          const MaterialParams& p, const W21Table& w21);

// (eps, omega10_rad_s, w10_s, w21_s) closed-form W10 and cached W21.
Table sweep_rates_vs_omega(const std::vector<double>& eps_grid,
                           const MaterialParams& p, const W21Table& w21);

}  // namespace lidonor
