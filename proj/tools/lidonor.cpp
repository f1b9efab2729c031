#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lidonor/dynamics.hpp"
#include "lidonor/errors.hpp"
#include "lidonor/oracles.hpp"
#include "lidonor/operating.hpp"
#include "lidonor/output.hpp"
#include "lidonor/pulses.hpp"
#include "lidonor/units.hpp"

using namespace lidonor;

namespace {

// "start:stop:step", "logN(start,stop,count)" or a single value
std::vector<double> parse_range(const std::string& text) {
    static const std::regex log_re(
        R"(^logN\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*(\d+)\s*\)$)");
    std::smatch m;
    if (std::regex_match(text, m, log_re)) {
        const double a = std::stod(m[1]), b = std::stod(m[2]);
        const int n = std::stoi(m[3]);
        if (!(a > 0.0 && b > 0.0) || n < 1)
            throw ConfigError("logN range needs positive bounds and count");
        std::vector<double> out;
        for (int i = 0; i < n; ++i) {
            const double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
            out.push_back(a * std::pow(b / a, t));
        }
        return out;
    }
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return {std::stod(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ConfigError("range must be start:stop:step");
    const double start = std::stod(text.substr(0, c1));
    const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (!(step > 0.0)) throw ConfigError("range step must be > 0");
    std::vector<double> out;
    for (double v = start; v <= stop + step * 1e-9; v += step)
        out.push_back(v);
    if (out.empty()) throw ConfigError("empty range");
    return out;
}

struct Common {
    std::string config;
    std::string format = "csv";
    std::string out;
    int seed = 0;  // reserved
    int quad_order = 0;

    MaterialParams materials() const {
        if (!config.empty()) return build_materials_from_file(config);
        if (const char* env = std::getenv("LIDONOR_CONFIG"))
            if (*env) return build_materials_from_file(env);
        return build_materials();
    }
    Overrides overrides() const {
        if (!config.empty()) {
            std::ifstream in(config);
            std::stringstream ss;
            ss << in.rdbuf();
            return parse_config_json(ss.str());
        }
        if (const char* env = std::getenv("LIDONOR_CONFIG"))
            if (*env) {
                std::ifstream in(env);
                std::stringstream ss;
                ss << in.rdbuf();
                return parse_config_json(ss.str());
            }
        return {};
    }
    QuadSettings quad() const {
        QuadSettings q;
        if (quad_order > 0) {
            q.n_theta = quad_order;
            q.n_phi = 2 * quad_order;
        }
        return q;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config,
                    "JSON constants override file (or LIDONOR_CONFIG)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--seed", c.seed, "reserved, accepted for compatibility");
    cmd->add_option("--quad-order", c.quad_order,
                    "angular quadrature order override");
}

void emit(const Table& t, const Common& c, const std::string& subcommand,
          const std::vector<std::pair<std::string, std::string>>& params,
          const MaterialParams& p) {
    OutputMeta meta;
    meta.subcommand = subcommand;
    meta.overrides = c.overrides();
    meta.quad = c.quad();
    meta.params = params;
    if (c.format == "json")
        write_text(c.out, table_to_json(t, meta, p).dump(2) + "\n");
    else
        write_text(c.out, table_to_csv(t, meta, p));
}

int dispatch(int argc, char** argv) {
    CLI::App app{"stress-tuned Li donor qubits in Si: levels, lifetimes, "
                 "couplings, dynamics"};
    app.require_subcommand(1);

    Common c_constants, c_levels, c_lifetimes, c_coupling, c_rabi,
        c_simulate, c_operating, c_verify;

    auto* cmd_constants =
        app.add_subcommand("constants", "dump material constants");
    add_common(cmd_constants, c_constants);

    auto* cmd_levels =
        app.add_subcommand("levels", "level structure across a stress range");
    add_common(cmd_levels, c_levels);
    std::string levels_eps = "0.05:0.5:0.05";
    cmd_levels->add_option("--eps", levels_eps, "epsilon range");

    auto* cmd_lifetimes =
        app.add_subcommand("lifetimes", "tau10 and tau21 vs epsilon");
    add_common(cmd_lifetimes, c_lifetimes);
    std::string lt_eps = "0.05:0.5:0.05";
    cmd_lifetimes->add_option("--eps", lt_eps, "epsilon range");

    auto* cmd_coupling =
        app.add_subcommand("coupling", "pair couplings vs separation");
    add_common(cmd_coupling, c_coupling);
    std::string cp_r = "logN(50,400,9)";
    double cp_eps = 0.2;
    cmd_coupling->add_option("--r-nm", cp_r, "separation range, nm");
    cmd_coupling->add_option("--eps", cp_eps, "epsilon");

    auto* cmd_rabi = app.add_subcommand("rabi", "resonant drive strength");
    add_common(cmd_rabi, c_rabi);
    double rb_amp = 1e5, rb_f10_ghz = 10.0;
    cmd_rabi->add_option("--amplitude", rb_amp, "ac stress, dyn/cm^2");
    cmd_rabi->add_option("--f10-ghz", rb_f10_ghz, "omega10/2pi in GHz");

    auto* cmd_simulate =
        app.add_subcommand("simulate", "evolve a pulse schedule");
    add_common(cmd_simulate, c_simulate);
    std::string sim_schedule, sim_mode = "two_level";
    double sim_temp_mk = 0.0, sim_dt_ns = 0.0;
    cmd_simulate->add_option("--schedule", sim_schedule, "schedule JSON file")
        ->required();
    cmd_simulate->add_option("--mode", sim_mode, "two_level or three_level")
        ->check(CLI::IsMember({"two_level", "three_level"}));
    cmd_simulate->add_option("--temperature-mk", sim_temp_mk, "bath, mK");
    cmd_simulate->add_option("--dt-ns", sim_dt_ns, "step (0 = auto)");

    auto* cmd_operating = app.add_subcommand(
        "operating-point", "quality factors and figure datasets");
    add_common(cmd_operating, c_operating);
    std::string op_kind = "fig3_temperature";
    std::string op_eps = "0.05:0.5:0.05", op_r = "logN(20,1000,25)";
    std::vector<double> op_q = {1e3, 1e4, 1e5};
    double op_homega21 = 0.001;
    bool op_printed = false;
    cmd_operating->add_option(
        "--kind", op_kind,
        "fig1_lifetimes | fig3_temperature | coupling_vs_R | rates_vs_omega");
    cmd_operating->add_option("--eps", op_eps, "epsilon range");
    cmd_operating->add_option("--r-nm", op_r, "separation range, nm");
    cmd_operating->add_option("--q", op_q, "quality targets");
    cmd_operating->add_option("--homega21-mev", op_homega21,
                              "hbar omega21 for the temperature dataset");
    cmd_operating->add_flag("--printed-form", op_printed,
                            "use the published inversion variant");

    auto* cmd_verify =
        app.add_subcommand("verify", "run the oracle verification battery");
    add_common(cmd_verify, c_verify);

    CLI11_PARSE(app, argc, argv);

    if (cmd_constants->parsed()) {
        const MaterialParams p = c_constants.materials();
        const DerivedParams d = derive(p);
        Table t;
        t.columns = {"kappa0_inv_cm", "sigma", "t0_check_k", "delta_c_mev",
                     "a_par_angstrom", "a_perp_angstrom"};
        t.rows.push_back({d.kappa0, d.sigma, d.t0_check,
                          units::erg_to_mev(p.delta_c),
                          units::cm_to_angstrom(p.a_par),
                          units::cm_to_angstrom(p.a_perp)});
        emit(t, c_constants, "constants", {}, p);
        return 0;
    }
    if (cmd_levels->parsed()) {
        const MaterialParams p = c_levels.materials();
        Table t;
        t.columns = {"eps", "homega10_mev", "homega21_mev", "a_coef",
                     "b_coef"};
        for (double eps : parse_range(levels_eps)) {
            const LevelStructure ls = manifold(eps, p);
            t.rows.push_back({eps,
                              units::erg_to_mev(units::hbar * ls.omega10),
                              units::erg_to_mev(units::hbar * ls.omega21),
                              ls.a_coef, ls.b_coef});
        }
        emit(t, c_levels, "levels", {{"eps", levels_eps}}, p);
        return 0;
    }
    if (cmd_lifetimes->parsed()) {
        const MaterialParams p = c_lifetimes.materials();
        const W21Table w21(p, c_lifetimes.quad());
        const Table t = sweep_lifetimes(parse_range(lt_eps), p, w21);
        emit(t, c_lifetimes, "lifetimes", {{"eps", lt_eps}}, p);
        return 0;
    }
    if (cmd_coupling->parsed()) {
        const MaterialParams p = c_coupling.materials();
        const W21Table w21(p, c_coupling.quad());
        const Table t =
            sweep_coupling_vs_r(parse_range(cp_r), cp_eps, p, w21);
        emit(t, c_coupling, "coupling",
             {{"r_nm", cp_r}, {"eps", format_double(cp_eps)}}, p);
        return 0;
    }
    if (cmd_rabi->parsed()) {
        const MaterialParams p = c_rabi.materials();
        const double omega10 = 2.0 * std::numbers::pi * rb_f10_ghz * 1e9;
        const double omega_x = rabi_frequency_x(rb_amp, omega10, p);
        Table t;
        t.columns = {"amplitude_dyn_cm2", "f10_ghz", "omega_x_rad_s",
                     "f_rabi_mhz", "tau_pi_ns"};
        t.rows.push_back({rb_amp, rb_f10_ghz, omega_x,
                          omega_x / (2.0 * std::numbers::pi) / 1e6,
                          units::s_to_ns(std::numbers::pi /
                                         (2.0 * omega_x))});
        emit(t, c_rabi, "rabi", {}, p);
        return 0;
    }
    if (cmd_simulate->parsed()) {
        const MaterialParams p = c_simulate.materials();
        const ScheduleFile file = load_schedule(sim_schedule);
        RegisterSpec spec;
        spec.n = file.reg.n;
        spec.mode = (sim_mode == "three_level") ? RegisterMode::three_level
                                                : RegisterMode::two_level;
        spec.temperature = units::mk_to_k(sim_temp_mk);
        for (int i = 0; i < spec.n; ++i) {
            spec.positions.push_back(
                {i * units::nm_to_cm(file.reg.spacing_nm), 0.0, 0.0});
            spec.epsilon.push_back(file.reg.epsilon0);
        }
        const Register reg = build_register(spec, p);
        EvolveOptions opt;
        opt.dt = units::ns_to_s(sim_dt_ns);
        std::vector<int> zeros(spec.n, 0);
        const EvolutionResult res =
            evolve(reg, file.schedule, basis_density(reg, zeros), opt);

        nlohmann::json doc;
        doc["schedule"] = schedule_to_json(file);
        doc["trace_deviation"] = res.trace_deviation;
        doc["leakage"] = res.leakage;
        nlohmann::json state = nlohmann::json::array();
        for (long r = 0; r < res.final_state.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (long cc = 0; cc < res.final_state.cols(); ++cc)
                row.push_back({res.final_state(r, cc).real(),
                               res.final_state(r, cc).imag()});
            state.push_back(row);
        }
        doc["final_state"] = state;
        write_text(c_simulate.out, doc.dump(2) + "\n");
        return 0;
    }
    if (cmd_operating->parsed()) {
        const MaterialParams p = c_operating.materials();
        const SweepKind kind = sweep_kind_from_name(op_kind);
        Table t;
        std::vector<std::pair<std::string, std::string>> params = {
            {"kind", op_kind}};
        switch (kind) {
            case SweepKind::fig1_lifetimes: {
                const W21Table w21(p, c_operating.quad());
                t = sweep_lifetimes(parse_range(op_eps), p, w21);
                params.push_back({"eps", op_eps});
                break;
            }
            case SweepKind::fig3_temperature: {
                if (op_printed) {
                    const double eps = units::mev_to_erg(op_homega21) /
                                       (2.0 * p.delta_c);
                    t.columns = {"r_nm", "q_target", "t_star_mk"};
                    for (double r_nm : parse_range(op_r))
                        for (double q : op_q)
                            t.rows.push_back(
                                {r_nm, q,
                                 units::k_to_mk(operating_temperature(
                                     q, units::nm_to_cm(r_nm), eps, p,
                                     true))});
                } else {
                    t = sweep_operating_temperature(parse_range(op_r), op_q,
                                                    op_homega21, p);
                }
                params.push_back({"r_nm", op_r});
                params.push_back(
                    {"homega21_mev", format_double(op_homega21)});
                params.push_back(
                    {"inversion", op_printed ? "printed" : "exact"});
                break;
            }
            case SweepKind::coupling_vs_r: {
                const W21Table w21(p, c_operating.quad());
                const auto eps_grid = parse_range(op_eps);
                t = sweep_coupling_vs_r(parse_range(op_r), eps_grid.front(),
                                        p, w21);
                params.push_back({"r_nm", op_r});
                params.push_back(
                    {"eps", format_double(eps_grid.front())});
                break;
            }
            case SweepKind::rates_vs_omega: {
                const W21Table w21(p, c_operating.quad());
                t = sweep_rates_vs_omega(parse_range(op_eps), p, w21);
                params.push_back({"eps", op_eps});
                break;
            }
        }
        emit(t, c_operating, "operating-point", params, p);
        return 0;
    }
    if (cmd_verify->parsed()) {
        const MaterialParams p = c_verify.materials();
        const auto reports = run_verification(p, c_verify.quad());
        std::ostringstream os;
        bool all_pass = true;
        for (const OracleReport& r : reports) {
            os << format_report_line(r) << "\n";
            all_pass = all_pass && r.pass;
        }
        write_text(c_verify.out, os.str());
        return all_pass ? 0 : 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
