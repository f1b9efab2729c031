#include "lidonor/envelope.hpp"

#include <cmath>
#include <numbers>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

const std::array<Vec3, 6>& valley_axes() {
    static const std::array<Vec3, 6> axes = {{
        {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
    }};
    return axes;
}

PhononMode make_mode(const Vec3& q, Branch branch, const MaterialParams& p) {
    const double qn = norm(q);
    if (!(qn > 0.0))
        throw ValidationError("phonon mode with zero wavevector");
    const Vec3 qhat = {q[0] / qn, q[1] / qn, q[2] / qn};
    PhononMode m;
    m.q = q;
    m.branch = branch;
    m.speed = (branch == Branch::L) ? p.u_l : p.u_t;
    m.omega = m.speed * qn;
    if (branch == Branch::L) {
        m.polarization = qhat;
    } else {
        Vec3 ref = (std::abs(qhat[2]) < 0.9) ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        Vec3 t1 = cross(ref, qhat);
        const double t1n = norm(t1);
        t1 = {t1[0] / t1n, t1[1] / t1n, t1[2] / t1n};
        m.polarization = (branch == Branch::T1) ? t1 : cross(qhat, t1);
    }
    return m;
}

double envelope_k(int valley, const Vec3& k, const MaterialParams& p) {
    if (valley < 0 || valley > 5)
        throw ValidationError("valley index out of range");
    const Vec3& n = valley_axes()[valley];
    const double kz = dot(k, n);
    const double kperp2 = dot(k, k) - kz * kz;
    const double denom =
        1.0 + p.a_perp * p.a_perp * kperp2 + p.a_par * p.a_par * kz * kz;
    const double amp =
        8.0 * std::sqrt(std::numbers::pi * p.a_perp * p.a_perp * p.a_par);
    return amp / (denom * denom);
}

namespace {
// Overlap of two identical envelopes displaced by d, axis n.
inline double overlap(const Vec3& d, const Vec3& n, const MaterialParams& p) {
    const double dz = dot(d, n);
    const double dperp2 = dot(d, d) - dz * dz;
    const double s =
        1.0 + 0.25 * (p.a_perp * p.a_perp * dperp2 + p.a_par * p.a_par * dz * dz);
    return 1.0 / (s * s);
}
}  // namespace

double form_factor_intra(int valley, const Vec3& q, const MaterialParams& p) {
    return overlap(q, valley_axes()[valley], p);
}

double form_factor_inter(int valley, const Vec3& q, const MaterialParams& p,
                         double kappa0) {
    const Vec3& n = valley_axes()[valley];
    const Vec3 d = {q[0] + kappa0 * n[0], q[1] + kappa0 * n[1],
                    q[2] + kappa0 * n[2]};
    return overlap(d, n, p);
}

double deformation_matrix_element(int valley, const PhononMode& mode,
                                  const MaterialParams& p) {
    if (!(mode.omega > 0.0))
        throw ValidationError("zero-frequency phonon mode");
    const Vec3& n = valley_axes()[valley];
    const double coupling = p.xi_u * dot(n, mode.q) * dot(n, mode.polarization) +
                            p.xi_d * dot(mode.q, mode.polarization);
    return std::sqrt(units::hbar / (2.0 * p.rho * mode.omega)) * coupling;
}

double transition_matrix_element(const ValleyState& to, const ValleyState& from,
                                 const PhononMode& mode,
                                 const MaterialParams& p,
                                 const TermFlags& flags) {
    if (!flags.include_intravalley && !flags.include_intervalley)
        throw ValidationError("empty term selection");
    const double kappa0 = 0.6 * std::numbers::pi / p.a_si;
    // Valley inversion pairs in the alpha ordering: 0<->1, 2<->3, 4<->5.
    double v = 0.0;
    for (int j = 0; j < 6; ++j) {
        const int jinv = j ^ 1;
        const double m = deformation_matrix_element(j, mode, p);
        double bracket = 0.0;
        if (flags.include_intravalley)
            bracket += from.alpha[j] * form_factor_intra(j, mode.q, p);
        if (flags.include_intervalley)
            bracket += from.alpha[jinv] * form_factor_inter(j, mode.q, p, kappa0);
        v += m * to.alpha[j] * bracket;
    }
    return v;
}

}  // namespace lidonor
