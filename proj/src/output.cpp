#include "lidonor/output.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back;
        std::sscanf(probe, "%lf", &back);
        if (back == v) return probe;
    }
    return buf;
}

namespace {

std::vector<std::pair<std::string, std::string>> constants_echo(
    const MaterialParams& p) {
    return {
        {"xi_u_eV", format_double(p.xi_u / units::erg_per_ev)},
        {"xi_d_eV", format_double(p.xi_d / units::erg_per_ev)},
        {"rho_g_cm3", format_double(p.rho)},
        {"u_t_cm_s", format_double(p.u_t)},
        {"u_l_cm_s", format_double(p.u_l)},
        {"s11_cm2_dyn", format_double(p.s11)},
        {"s12_cm2_dyn", format_double(p.s12)},
        {"a_si_angstrom", format_double(units::cm_to_angstrom(p.a_si))},
        {"a_par_angstrom", format_double(units::cm_to_angstrom(p.a_par))},
        {"a_perp_angstrom", format_double(units::cm_to_angstrom(p.a_perp))},
        {"delta_c_meV", format_double(units::erg_to_mev(p.delta_c))},
        {"nu0_hz", format_double(p.nu0)},
        {"t0_k", format_double(p.t0)},
    };
}

std::string quad_echo(const QuadSettings& q) {
    std::ostringstream os;
    os << "n_theta=" << q.n_theta << " n_phi=" << q.n_phi
       << " legendre_terms=" << q.legendre_terms
       << " radial_samples=" << q.radial_samples
       << " q_max_over_inv_apar=" << format_double(q.q_max_over_inv_apar)
       << " rel_tol=" << format_double(q.rel_tol);
    return os.str();
}

}  // namespace

std::string table_to_csv(const Table& t, const OutputMeta& meta,
                         const MaterialParams& p) {
    std::ostringstream os;
    os << "# lidonor " << kToolVersion << "\n";
    os << "# subcommand: " << meta.subcommand << "\n";
    os << "# constants:";
    for (const auto& [k, v] : constants_echo(p)) os << " " << k << "=" << v;
    os << "\n";
    os << "# overrides:";
    for (const auto& [k, v] : meta.overrides)
        os << " " << k << "=" << format_double(v);
    os << "\n";
    os << "# quadrature: " << quad_echo(meta.quad) << "\n";
    for (const auto& [k, v] : meta.params)
        os << "# " << k << ": " << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw NumericalError("table row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        os << "\n";
    }
    return os.str();
}

nlohmann::json table_to_json(const Table& t, const OutputMeta& meta,
                             const MaterialParams& p) {
    nlohmann::json meta_j;
    meta_j["tool"] = "lidonor";
    meta_j["version"] = kToolVersion;
    meta_j["subcommand"] = meta.subcommand;
    nlohmann::json consts = nlohmann::json::object();
    for (const auto& [k, v] : constants_echo(p)) consts[k] = v;
    meta_j["constants"] = consts;
    nlohmann::json ov = nlohmann::json::object();
    for (const auto& [k, v] : meta.overrides) ov[k] = v;
    meta_j["overrides"] = ov;
    meta_j["quadrature"] = quad_echo(meta.quad);
    nlohmann::json pj = nlohmann::json::object();
    for (const auto& [k, v] : meta.params) pj[k] = v;
    meta_j["parameters"] = pj;

    nlohmann::json doc;
    doc["meta"] = meta_j;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) doc["rows"].push_back(row);
    return doc;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << text;
    if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace lidonor
