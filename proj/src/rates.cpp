#include "lidonor/rates.hpp"

#include <cmath>
#include <numbers>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;

double suppression_factor_10(double epsilon, const MaterialParams& p) {
    const double a = manifold(epsilon, p).a_coef;
    const double x = p.a_par * (0.6 * pi / p.a_si) / 2.0;
    return 8.0 * a * a / (35.0 * std::pow(x, 10));
}

RateResult decay_rate_closed_form_10(double epsilon, const MaterialParams& p) {
    const LevelStructure ls = manifold(epsilon, p);
    const double kappa0 = 0.6 * pi / p.a_si;
    const double a = ls.a_coef;
    const double ak = p.a_par * kappa0;
    const double b = 1.0 + 0.25 * ak * ak;
    const double omega = ls.omega10;
    RateResult r;
    if (omega == 0.0) return r;
    const double w = (2.0 / 35.0) * a * a * ak * ak / std::pow(b, 6) *
                     p.xi_u * p.xi_u * std::pow(omega, 5) * p.a_par * p.a_par /
                     (pi * units::hbar * p.rho * std::pow(p.u_t, 7));
    r.total = w;
    r.branch_t1 = 0.5 * w;
    r.branch_t2 = 0.5 * w;
    const double wavelength = 2.0 * pi * p.u_t / omega;
    if (wavelength < 10.0 * p.a_par)
        r.warning = "long-wavelength precondition marginal: 2 pi u_t/omega10 < "
                    "10 a_par";
    return r;
}

namespace {

// Angular shell integral of |V|^2 for one branch at |q| = omega/u.
double shell_integral(const ValleyState& to, const ValleyState& from,
                      double omega, Branch branch, const MaterialParams& p,
                      const GaussLegendre& gl, int n_phi,
                      const TermFlags& flags) {
    const double u = (branch == Branch::L) ? p.u_l : p.u_t;
    const double qs = omega / u;
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double mu = gl.x[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        double phi_sum = 0.0;
        for (int k = 0; k < n_phi; ++k) {
            const double phi = 2.0 * pi * (k + 0.5) / n_phi;
            const Vec3 q = {qs * st * std::cos(phi), qs * st * std::sin(phi),
                            qs * mu};
            const PhononMode mode = make_mode(q, branch, p);
            const double v = transition_matrix_element(to, from, mode, p, flags);
            phi_sum += v * v;
        }
        sum += gl.w[i] * phi_sum * (2.0 * pi / n_phi);
    }
    // W_branch = (2 pi / hbar^2) (1/(2 pi)^3) (qs^2/u) * shell integral
    return (2.0 * pi / (units::hbar * units::hbar)) /
           std::pow(2.0 * pi, 3) * (qs * qs / u) * sum;
}

}  // namespace

RateResult decay_rate_oracle(const ValleyState& to, const ValleyState& from,
                             double omega, const MaterialParams& p,
                             const QuadSettings& quad, BranchFilter filter,
                             const TermFlags& flags) {
    if (!(omega > 0.0))
        throw ValidationError("emission requires omega > 0");
    RateResult r;
    auto run = [&](int n_theta, int n_phi) {
        RateResult out;
        const GaussLegendre gl = gauss_legendre(n_theta);
        if (filter != BranchFilter::transverse_only)
            out.branch_l =
                shell_integral(to, from, omega, Branch::L, p, gl, n_phi, flags);
        if (filter != BranchFilter::longitudinal_only) {
            out.branch_t1 = shell_integral(to, from, omega, Branch::T1, p, gl,
                                           n_phi, flags);
            out.branch_t2 = shell_integral(to, from, omega, Branch::T2, p, gl,
                                           n_phi, flags);
        }
        out.total = out.branch_l + out.branch_t1 + out.branch_t2;
        return out;
    };
    r = run(quad.n_theta, quad.n_phi);
    const RateResult fine = run(2 * quad.n_theta, 2 * quad.n_phi);
    const double scale = std::max(std::abs(fine.total), 1e-300);
    if (std::abs(fine.total - r.total) / scale > quad.rel_tol)
        throw NumericalError(
            "shell quadrature not converged: rel change " +
            std::to_string(std::abs(fine.total - r.total) / scale) +
            " at orders " + std::to_string(quad.n_theta) + "x" +
            std::to_string(quad.n_phi));
    const double wavelength = 2.0 * pi * p.u_t / omega;
    RateResult out = fine;
    if (wavelength < 10.0 * p.a_par)
        out.warning = "long-wavelength precondition marginal";
    return out;
}

double dephasing_rate(double temperature_k, const MaterialParams& p) {
    if (temperature_k < 0.0)
        throw ValidationError("temperature must be >= 0");
    return p.nu0 * std::pow(temperature_k / p.t0, 11);
}

double planck_n(double omega, double temperature_k) {
    if (temperature_k <= 0.0) return 0.0;
    const double x = units::hbar * omega / (units::k_boltzmann * temperature_k);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

RateResult decay_rate_oracle_21(double epsilon, const MaterialParams& p,
                                const QuadSettings& quad) {
    const LevelStructure ls = manifold(epsilon, p);
    return decay_rate_oracle(singlet_state(ls), triplet_even_state(ls),
                             ls.omega21, p, quad);
}

RateResult decay_rate_oracle_10(double epsilon, const MaterialParams& p,
                                const QuadSettings& quad) {
    const LevelStructure ls = manifold(epsilon, p);
    return decay_rate_oracle(ground_state(ls), singlet_state(ls), ls.omega10, p,
                             quad);
}

W21Table::W21Table(const MaterialParams& p, const QuadSettings& quad,
                   double eps_min, double eps_max, int n_grid) {
    if (!(eps_min > 0.0 && eps_max > eps_min && n_grid >= 2))
        throw ValidationError("bad W21 grid");
    log_eps_.reserve(n_grid);
    log_w_.reserve(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double t = static_cast<double>(i) / (n_grid - 1);
        const double eps =
            std::exp(std::log(eps_min) + t * (std::log(eps_max) - std::log(eps_min)));
        const double w = decay_rate_oracle_21(eps, p, quad).total;
        log_eps_.push_back(std::log(eps));
        log_w_.push_back(std::log(w));
    }
}

double W21Table::rate(double epsilon) const {
    if (!(epsilon > 0.0))
        throw ValidationError("W21 interpolation requires epsilon > 0");
    const double le = std::log(epsilon);
    // Piecewise-linear in log-log; clamped linear extrapolation at the ends.
    std::size_t hi = 1;
    while (hi + 1 < log_eps_.size() && log_eps_[hi] < le) ++hi;
    const std::size_t lo = hi - 1;
    const double t = (le - log_eps_[lo]) / (log_eps_[hi] - log_eps_[lo]);
    return std::exp(log_w_[lo] + t * (log_w_[hi] - log_w_[lo]));
}

}  // namespace lidonor
