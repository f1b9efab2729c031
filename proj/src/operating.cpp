#include "lidonor/operating.hpp"

#include <cmath>
#include <numbers>

#include "lidonor/coupling.hpp"
#include "lidonor/errors.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;

double quality_two_level(double r_cm, double epsilon, const MaterialParams& p) {
    const double j = std::abs(ising_coupling(r_cm, p));
    const double tau2 = pi / j;
    const double w10 = decay_rate_closed_form_10(epsilon, p).total;
    return 1.0 / (tau2 * w10);
}

double quality_two_level_closed(double r_cm, double epsilon,
                                const MaterialParams& p) {
    const DerivedParams d = derive(p);
    const LevelStructure ls = manifold(epsilon, p);
    const double ak = p.a_par * d.kappa0;
    const double b = 1.0 + ak * ak / 4.0;
    const double rr = (p.u_t / p.u_l) * (p.u_t / p.u_l);
    const double a2 = ls.a_coef * ls.a_coef;
    return 35.0 * std::pow(b, 6) * std::pow(p.u_t, 5) *
           (1.0 - (5.0 / 3.0) * rr) /
           (64.0 * pi * a2 * ak * ak * r_cm * r_cm * r_cm *
            std::pow(ls.omega10, 5) * p.a_par * p.a_par);
}

double quality_three_level(double r_cm, double epsilon, double temperature_k,
                           const MaterialParams& p) {
    if (temperature_k < 0.0) throw ValidationError("temperature must be >= 0");
    if (!(r_cm > 0.0)) throw ValidationError("R must be positive");
    const LevelStructure ls = manifold(epsilon, p);
    const double x = p.u_t / (ls.omega21 * r_cm);
    const double n21 = planck_n(ls.omega21, temperature_k);
    return gamma_factor(p) / (n21 + 1.0) * x * x * x;
}

double operating_temperature(double q_target, double r_cm, double epsilon,
                             const MaterialParams& p, bool printed_form) {
    if (!(q_target > 0.0)) throw ValidationError("q_target must be > 0");
    const LevelStructure ls = manifold(epsilon, p);
    const double gamma = gamma_factor(p);
    const double x = p.u_t / (ls.omega21 * r_cm);
    const double homega = units::hbar * ls.omega21;
    if (printed_form) {
        const double arg = 1.0 - q_target / (3.0 * gamma * x);
        if (!(arg > 0.0 && arg < 1.0))
            throw ValidationError(
                "q_target infeasible for the printed inversion variant");
        return -homega / (3.0 * units::k_boltzmann * std::log(arg));
    }
    const double q_max = gamma * x * x * x;
    if (q_target >= q_max)
        throw ValidationError(
            "q_target at or above the zero-temperature maximum");
    const double arg = 1.0 - q_target / q_max;
    return -homega / (units::k_boltzmann * std::log(arg));
}

SweepKind sweep_kind_from_name(const std::string& name) {
    if (name == "fig1_lifetimes") return SweepKind::fig1_lifetimes;
    if (name == "fig3_temperature") return SweepKind::fig3_temperature;
    if (name == "coupling_vs_R") return SweepKind::coupling_vs_r;
    if (name == "rates_vs_omega") return SweepKind::rates_vs_omega;
    throw ConfigError("unknown sweep kind '" + name + "'");
}

Table sweep_lifetimes(const std::vector<double>& eps_grid,
                      const MaterialParams& p, const W21Table& w21) {
    Table t;
    t.columns = {"eps", "homega10_mev", "tau10_s", "tau21_s"};
    for (double eps : eps_grid) {
        const LevelStructure ls = manifold(eps, p);
        const double w10 = decay_rate_closed_form_10(eps, p).total;
        t.rows.push_back({eps, units::erg_to_mev(units::hbar * ls.omega10),
                          1.0 / w10, 1.0 / w21.rate(eps)});
    }
    return t;
}

Table sweep_operating_temperature(const std::vector<double>& r_nm_grid,
                                  const std::vector<double>& q_targets,
                                  double homega21_mev,
                                  const MaterialParams& p) {
    // epsilon giving the requested 2-1 splitting: hbar omega21 = 2 eps delta_c
    const double eps =
        units::mev_to_erg(homega21_mev) / (2.0 * p.delta_c);
    Table t;
    t.columns = {"r_nm", "q_target", "t_star_mk"};
    const double gamma = gamma_factor(p);
    const LevelStructure ls = manifold(eps, p);
    for (double r_nm : r_nm_grid)
        for (double q : q_targets) {
            // curves end where the zero-temperature quality drops below
            // the target; no row rather than a throw
            const double x = p.u_t / (ls.omega21 * units::nm_to_cm(r_nm));
            if (q >= gamma * x * x * x) continue;
            t.rows.push_back(
                {r_nm, q,
                 units::k_to_mk(operating_temperature(
                     q, units::nm_to_cm(r_nm), eps, p))});
        }
    return t;
}

Table sweep_coupling_vs_r(const std::vector<double>& r_nm_grid, double epsilon,
                          const MaterialParams& p, const W21Table& w21) {
    Table t;
    t.columns = {"r_nm", "g10_rad_s", "g21_rad_s", "j_rad_s"};
    const double w = w21.rate(epsilon);
    for (double r_nm : r_nm_grid) {
        const double r = units::nm_to_cm(r_nm);
        const CouplingSet c = couplings_closed_form(r, epsilon, p, w);
        t.rows.push_back({r_nm, c.g10, c.g21, c.j_ising});
    }
    return t;
}

Table sweep_rates_vs_omega(const std::vector<double>& eps_grid,
                           const MaterialParams& p, const W21Table& w21) {
    Table t;
    t.columns = {"eps", "omega10_rad_s", "w10_s", "w21_s"};
    for (double eps : eps_grid) {
        const LevelStructure ls = manifold(eps, p);
        t.rows.push_back({eps, ls.omega10,
                          decay_rate_closed_form_10(eps, p).total,
                          w21.rate(eps)});
    }
    return t;
}

}  // namespace lidonor
