#pragma once

#include <array>
#include <cmath>

#include "lidonor/levels.hpp"
#include "lidonor/materials.hpp"

namespace lidonor {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

enum class Branch { L, T1, T2 };

// Acoustic mode with linear isotropic dispersion Omega = u_nu |q|.
struct PhononMode {
    Vec3 q;            // 1/cm
    Branch branch;
    Vec3 polarization; // unit vector
    double speed;      // cm/s
    double omega;      // rad/s
};

// Builds the mode for a propagation direction; L polarization along q,
// T1 in a deterministic transverse direction, T2 completing the triad.
PhononMode make_mode(const Vec3& q, Branch branch, const MaterialParams& p);

// Valley axes in the alpha ordering (+x,-x,+y,-y,+z,-z).
const std::array<Vec3, 6>& valley_axes();

// Momentum-space Kohn-Luttinger 1s envelope centered on valley j
// (index 0..5), normalized so that int |A|^2 d^3k/(2pi)^3 = 1.
double envelope_k(int valley, const Vec3& k, const MaterialParams& p);

// Same-valley overlap form factor F_j(q) = int A_k A_{k+q} d^3k/(2pi)^3
// = [1 + (a_perp^2 q_perp^2 + a_par^2 q_z^2)/4]^-2 with z along the
// valley axis. F(0) = 1.
double form_factor_intra(int valley, const Vec3& q, const MaterialParams& p);

// Umklapp overlap between valleys j and -j: the envelope centers are
// displaced by kappa0 along the valley axis.
double form_factor_inter(int valley, const Vec3& q, const MaterialParams& p,
                         double kappa0);

// sqrt(hbar/(2 rho Omega)) [Xi_u (k_j.q)(k_j.e) + Xi_d (q.e)], with the
// 1/sqrt(V) absorbed into the continuum measure. Units: erg cm^(3/2).
double deformation_matrix_element(int valley, const PhononMode& mode,
                                  const MaterialParams& p);

struct TermFlags {
    bool include_intravalley = true;
    bool include_intervalley = true;
};

// Electron-phonon matrix element between two valley states: the
// intravalley sum plus the closest-pair umklapp term.
double transition_matrix_element(const ValleyState& to, const ValleyState& from,
                                 const PhononMode& mode,
                                 const MaterialParams& p,
                                 const TermFlags& flags = {});

}  // namespace lidonor
