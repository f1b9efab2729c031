#include "lidonor/coupling.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "lidonor/errors.hpp"
#include "lidonor/rates.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;

DonorPairGeometry make_pair_geometry(const Vec3& r_vec) {
    if (!(norm(r_vec) > 0.0))
        throw ValidationError("donor pair separation must be nonzero");
    DonorPairGeometry g;
    g.r_vec = r_vec;
    g.in_plane = (r_vec[2] == 0.0);
    return g;
}

namespace {

// Branch-summed kernel sum_nu V_a V_b / Omega at a given wavevector.
// V_a, V_b are supplied as pairs of (to, from) states.
struct PairStates {
    const ValleyState* a_to;
    const ValleyState* a_from;
    const ValleyState* b_to;
    const ValleyState* b_from;
};

double kernel_at(const Vec3& q, const PairStates& s, const MaterialParams& p) {
    double k = 0.0;
    for (Branch br : {Branch::L, Branch::T1, Branch::T2}) {
        const PhononMode mode = make_mode(q, br, p);
        const double va = transition_matrix_element(*s.a_to, *s.a_from, mode, p);
        const double vb = transition_matrix_element(*s.b_to, *s.b_from, mode, p);
        k += va * vb / mode.omega;
    }
    return k;
}

// Difference kernel for the Ising combination: (V11 - V00)^2 / Omega.
double ising_kernel_at(const Vec3& q, const LevelStructure& ls,
                       const MaterialParams& p) {
    const ValleyState& g = ground_state(ls);
    const ValleyState& s1 = singlet_state(ls);
    double k = 0.0;
    for (Branch br : {Branch::L, Branch::T1, Branch::T2}) {
        const PhononMode mode = make_mode(q, br, p);
        const double dv = transition_matrix_element(s1, s1, mode, p) -
                          transition_matrix_element(g, g, mode, p);
        k += dv * dv / mode.omega;
    }
    return k;
}

std::vector<double> legendre_values(double mu, int l_max) {
    std::vector<double> pl(l_max + 1);
    pl[0] = 1.0;
    if (l_max >= 1) pl[1] = mu;
    for (int l = 1; l < l_max; ++l)
        pl[l + 1] = ((2.0 * l + 1.0) * mu * pl[l] - l * pl[l - 1]) / (l + 1.0);
    return pl;
}

// Spherical Bessel j_l(x) for l = 0..l_max. Upward recurrence where it is
// stable (x > l_max), std::sph_bessel otherwise.
void sph_bessel_all(double x, int l_max, std::vector<double>& out) {
    out.resize(l_max + 1);
    if (x < 1e-8) {
        out.assign(l_max + 1, 0.0);
        out[0] = 1.0;
        return;
    }
    if (x > l_max + 10) {
        out[0] = std::sin(x) / x;
        if (l_max >= 1) out[1] = std::sin(x) / (x * x) - std::cos(x) / x;
        for (int l = 1; l < l_max; ++l)
            out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
    } else {
        const double lx = std::log(x);
        for (int l = 0; l <= l_max; ++l) {
            // leading order j_l ~ x^l/(2l+1)!!; libstdc++ yields NaN on
            // underflow, so map those to zero
            const double log_mag = l * lx - (std::lgamma(2.0 * l + 2.0) -
                                             l * std::numbers::ln2 -
                                             std::lgamma(l + 1.0));
            out[l] = (log_mag < -700.0)
                         ? 0.0
                         : std::sph_bessel(static_cast<unsigned>(l), x);
        }
    }
}

struct MomentTable {
    std::vector<double> log_q;          // log-spaced sample points
    std::vector<std::vector<double>> m; // [sample][even-l index]
    int n_even;
};

// Catmull-Rom interpolation of the moments in ln q.
void interp_moments(const MomentTable& t, double q, std::vector<double>& out) {
    const double lq = std::log(q);
    const std::size_t n = t.log_q.size();
    const double lo = t.log_q.front(), hi = t.log_q.back();
    double u = (lq - lo) / (hi - lo) * (n - 1);
    u = std::min(std::max(u, 0.0), static_cast<double>(n - 1));
    const std::size_t i1 = std::min(static_cast<std::size_t>(u), n - 2);
    const double s = u - i1;
    const std::size_t i0 = (i1 == 0) ? 0 : i1 - 1;
    const std::size_t i2 = i1 + 1;
    const std::size_t i3 = std::min(i2 + 1, n - 1);
    const double c0 = -0.5 * s + s * s - 0.5 * s * s * s;
    const double c1 = 1.0 - 2.5 * s * s + 1.5 * s * s * s;
    const double c2 = 0.5 * s + 2.0 * s * s - 1.5 * s * s * s;
    const double c3 = -0.5 * s * s + 0.5 * s * s * s;
    out.resize(t.n_even);
    for (int k = 0; k < t.n_even; ++k)
        out[k] = c0 * t.m[i0][k] + c1 * t.m[i1][k] + c2 * t.m[i2][k] +
                 c3 * t.m[i3][k];
}

using AngularKernel = std::function<double(const Vec3&)>;

double static_limit_integral(const AngularKernel& kernel, const Vec3& r_vec,
                             const MaterialParams& p, const QuadSettings& quad,
                             double* trunc_estimate) {
    const double r = norm(r_vec);
    const Vec3 rhat = {r_vec[0] / r, r_vec[1] / r, r_vec[2] / r};
    Vec3 ref = (std::abs(rhat[2]) < 0.9) ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = cross(ref, rhat);
    const double e1n = norm(e1);
    e1 = {e1[0] / e1n, e1[1] / e1n, e1[2] / e1n};
    const Vec3 e2 = cross(rhat, e1);

    const int l_max = quad.legendre_terms - (quad.legendre_terms % 2);
    const int n_even = l_max / 2 + 1;
    const double q_max = quad.q_max_over_inv_apar / p.a_par;
    const double q_min = 1e-3 / r;

    // Legendre moments of the angular kernel on a log-spaced radial grid.
    MomentTable table;
    table.n_even = n_even;
    const int n_samples = quad.radial_samples;
    const GaussLegendre gl_mu = gauss_legendre(std::max(64, l_max + 16));
    const int n_phi = quad.n_phi / 2 > 0 ? quad.n_phi / 2 : 64;
    table.log_q.resize(n_samples);
    table.m.assign(n_samples, std::vector<double>(n_even, 0.0));
    for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        const double lq = std::log(q_min) + t * (std::log(q_max) - std::log(q_min));
        const double q = std::exp(lq);
        table.log_q[i] = lq;
        auto& row = table.m[i];
        for (std::size_t a = 0; a < gl_mu.x.size(); ++a) {
            const double mu = gl_mu.x[a];
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            std::vector<double> pl = legendre_values(mu, l_max);
            double kphi = 0.0;
            for (int b = 0; b < n_phi; ++b) {
                const double phi = 2.0 * pi * (b + 0.5) / n_phi;
                const double c = std::cos(phi), sn = std::sin(phi);
                const Vec3 qv = {
                    q * (st * c * e1[0] + st * sn * e2[0] + mu * rhat[0]),
                    q * (st * c * e1[1] + st * sn * e2[1] + mu * rhat[1]),
                    q * (st * c * e1[2] + st * sn * e2[2] + mu * rhat[2])};
                kphi += kernel(qv);
            }
            const double wk = gl_mu.w[a] * kphi * (2.0 * pi / n_phi);
            for (int k = 0; k < n_even; ++k) row[k] += wk * pl[2 * k];
        }
    }

    // Dense radial integration against the spherical Bessel kernels.
    const double panel_w = std::min(pi / (2.0 * r), (q_max - q_min) / 64.0);
    long n_panels = static_cast<long>(std::ceil((q_max - q_min) / panel_w));
    const int nodes_per_panel = 8;
    if (n_panels * nodes_per_panel > 400000)
        n_panels = 400000 / nodes_per_panel;
    const double h = (q_max - q_min) / n_panels;
    const GaussLegendre gl_r = gauss_legendre(nodes_per_panel);
    std::vector<double> jl, ml;
    std::vector<double> contrib(n_even, 0.0);  // per-l contribution
    double tail = 0.0;  // contribution of the top octave in q
    const double q_tail = q_max / 2.0;
    for (long ip = 0; ip < n_panels; ++ip) {
        const double qa = q_min + ip * h;
        double acc = 0.0;
        for (int in = 0; in < nodes_per_panel; ++in) {
            const double q = qa + 0.5 * h * (gl_r.x[in] + 1.0);
            const double w = 0.5 * h * gl_r.w[in];
            sph_bessel_all(q * r, l_max, jl);
            interp_moments(table, q, ml);
            for (int k = 0; k < n_even; ++k) {
                const int l = 2 * k;
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                const double term =
                    w * q * q * (2.0 * l + 1.0) * sign * jl[l] * ml[k];
                contrib[k] += term;
                acc += term;
            }
        }
        if (qa >= q_tail) tail += acc;
    }
    double total = 0.0;
    for (double c : contrib) total += c;
    if (trunc_estimate) {
        const double scale = std::max(std::abs(total), 1e-300);
        const double top =
            std::abs(contrib[n_even - 1]) + std::abs(contrib[n_even - 2]);
        *trunc_estimate = std::max(top / scale, std::abs(tail) / scale);
    }
    return total / (units::hbar * units::hbar * std::pow(2.0 * pi, 3));
}

double transition_omega(const ValleyState& a, const ValleyState& b) {
    return std::abs(a.energy - b.energy) / units::hbar;
}

CouplingResult finish(double value, double trunc, double omega_max, double r,
                      const MaterialParams& p, const QuadSettings& quad) {
    CouplingResult res;
    res.value = value;
    if (omega_max * r / p.u_t >= 0.3)
        res.warning = "static-limit precondition omega R/u_t < 0.3 violated";
    if (trunc > 10.0 * quad.rel_tol)
        throw NumericalError("coupling quadrature not converged: estimate " +
                             std::to_string(trunc));
    return res;
}

}  // namespace

CouplingResult coupling_integral(const ValleyState& mu_i,
                                 const ValleyState& mu_i_prime,
                                 const ValleyState& mu_j,
                                 const ValleyState& mu_j_prime,
                                 const DonorPairGeometry& geom,
                                 const MaterialParams& p,
                                 const QuadSettings& quad) {
    PairStates s{&mu_i, &mu_i_prime, &mu_j, &mu_j_prime};
    double trunc = 0.0;
    const double v = static_limit_integral(
        [&](const Vec3& q) { return kernel_at(q, s, p); }, geom.r_vec, p, quad,
        &trunc);
    const double omega =
        std::max(transition_omega(mu_i, mu_i_prime),
                 transition_omega(mu_j, mu_j_prime));
    return finish(v, trunc, omega, norm(geom.r_vec), p, quad);
}

CouplingResult ising_coupling_oracle(const LevelStructure& ls,
                                     const DonorPairGeometry& geom,
                                     const MaterialParams& p,
                                     const QuadSettings& quad) {
    double trunc = 0.0;
    const double v = static_limit_integral(
        [&](const Vec3& q) { return ising_kernel_at(q, ls, p); }, geom.r_vec, p,
        quad, &trunc);
    // Both orderings of the pair contribute cross terms (exp(iq.R) and its
    // conjugate), so the physical S_z S_z constant is twice the combination.
    return finish(2.0 * v, trunc, 0.0, norm(geom.r_vec), p, quad);
}

CouplingResult ret_coupling_oracle_10(const LevelStructure& ls,
                                      const DonorPairGeometry& geom,
                                      const MaterialParams& p,
                                      const QuadSettings& quad) {
    return coupling_integral(singlet_state(ls), ground_state(ls),
                             ground_state(ls), singlet_state(ls), geom, p,
                             quad);
}

CouplingResult ret_coupling_oracle_21(const LevelStructure& ls,
                                      const DonorPairGeometry& geom,
                                      const MaterialParams& p,
                                      const QuadSettings& quad) {
    return coupling_integral(triplet_even_state(ls), singlet_state(ls),
                             singlet_state(ls), triplet_even_state(ls), geom, p,
                             quad);
}

double gamma_factor(const MaterialParams& p) {
    const double rr = (p.u_t * p.u_t) / (p.u_l * p.u_l);
    return (5.0 / 16.0) * (2.0 + 7.0 * (1.0 - rr));
}

double ret_coupling_10(double r_cm, double epsilon, const MaterialParams& p) {
    if (!(r_cm > 0.0)) throw ValidationError("R must be positive");
    const LevelStructure ls = manifold(epsilon, p);
    const double w10 = decay_rate_closed_form_10(epsilon, p).total;
    const double rr = (p.u_t * p.u_t) / (p.u_l * p.u_l);
    const double sigma = p.xi_d / p.xi_u;
    const double geom = 3.0 - rr * (4.0 * sigma + 5.0);
    const double x = p.u_t / (ls.omega10 * r_cm);
    return w10 * (315.0 / 16.0) * geom * std::pow(x, 5);
}

double ret_coupling_21(double r_cm, double epsilon, const MaterialParams& p,
                       double w21) {
    if (!(r_cm > 0.0)) throw ValidationError("R must be positive");
    const LevelStructure ls = manifold(epsilon, p);
    const double x = p.u_t / (ls.omega21 * r_cm);
    return w21 * gamma_factor(p) * std::pow(x, 3);
}

double ising_coupling(double r_cm, const MaterialParams& p) {
    if (!(r_cm > 0.0)) throw ValidationError("R must be positive");
    const double rr = (p.u_t * p.u_t) / (p.u_l * p.u_l);
    return p.xi_u * p.xi_u /
           (32.0 * pi * units::hbar * p.rho * p.u_t * p.u_t *
            r_cm * r_cm * r_cm) *
           (-1.0 + (5.0 / 3.0) * rr);
}

CouplingSet couplings_closed_form(double r_cm, double epsilon,
                                  const MaterialParams& p, double w21) {
    return {ret_coupling_10(r_cm, epsilon, p),
            ret_coupling_21(r_cm, epsilon, p, w21), ising_coupling(r_cm, p)};
}

}  // namespace lidonor
