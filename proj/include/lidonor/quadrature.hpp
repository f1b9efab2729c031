#pragma once

#include <vector>

namespace lidonor {

struct GaussLegendre {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
GaussLegendre gauss_legendre(int n);

// Settings for the angular (energy-shell) and radial quadratures.
struct QuadSettings {
    int n_theta = 64;    // Gauss-Legendre order in cos(theta)
    int n_phi = 128;     // uniform azimuthal nodes
    double rel_tol = 1e-3;
    // Radial cutoff for coupling integrals, in units of 1/a_par.
    double q_max_over_inv_apar = 40.0;
    int legendre_terms = 128;  // plane-wave expansion order (couplings)
    int radial_samples = 512;  // moment-table resolution (couplings)
};

}  // namespace lidonor
