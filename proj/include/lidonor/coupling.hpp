#pragma once

#include <optional>
#include <string>

#include "lidonor/envelope.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/quadrature.hpp"

namespace lidonor {

struct DonorPairGeometry {
    Vec3 r_vec;          // cm
    bool in_plane;       // asserts r_vec perpendicular to <001>
};

DonorPairGeometry make_pair_geometry(const Vec3& r_vec);

struct CouplingSet {
    double g10;      // rad/s
    double g21;      // rad/s
    double j_ising;  // rad/s, sign retained
};

struct CouplingResult {
    double value = 0.0;  // rad/s
    std::optional<std::string> warning;
};

// Static-limit phonon-mediated coupling
//   g = (1/hbar^2) (1/(2pi)^3) int d^3q sum_nu V_i V_j^* exp(iq.R)/Omega
// evaluated by even-order Legendre moments of the angular integrand and a
// dense radial quadrature against spherical Bessel kernels.
CouplingResult coupling_integral(const ValleyState& mu_i,
                                 const ValleyState& mu_i_prime,
                                 const ValleyState& mu_j,
                                 const ValleyState& mu_j_prime,
                                 const DonorPairGeometry& geom,
                                 const MaterialParams& p,
                                 const QuadSettings& quad = {});

// The pair S_z S_z constant: twice the combination
// G(11,11) + G(00,00) - 2 G(00,11), evaluated as a single integral of
// (V11 - V00)^2 for better cancellation. The factor two is the h.c. of
// the pair interaction (cross terms exp(iq.R) and exp(-iq.R)).
CouplingResult ising_coupling_oracle(const LevelStructure& ls,
                                     const DonorPairGeometry& geom,
                                     const MaterialParams& p,
                                     const QuadSettings& quad = {});

// RET oracle for the resonant pair (mu -> mu' on i, mu' -> mu on j).
CouplingResult ret_coupling_oracle_10(const LevelStructure& ls,
                                      const DonorPairGeometry& geom,
                                      const MaterialParams& p,
                                      const QuadSettings& quad = {});
CouplingResult ret_coupling_oracle_21(const LevelStructure& ls,
                                      const DonorPairGeometry& geom,
                                      const MaterialParams& p,
                                      const QuadSettings& quad = {});

// Closed forms; in-plane geometry only (R perpendicular to <001>).
double ret_coupling_10(double r_cm, double epsilon, const MaterialParams& p);
double ret_coupling_21(double r_cm, double epsilon, const MaterialParams& p,
                       double w21);
double ising_coupling(double r_cm, const MaterialParams& p);

// gamma = (5/16)(2 + 7(1 - u_t^2/u_l^2)), about 2.0 for Si.
double gamma_factor(const MaterialParams& p);

CouplingSet couplings_closed_form(double r_cm, double epsilon,
                                  const MaterialParams& p, double w21);

}  // namespace lidonor
