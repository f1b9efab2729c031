#include "lidonor/materials.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

namespace {

MaterialParams defaults() {
    using namespace units;
    MaterialParams p;
    p.xi_u = ev_to_erg(8.77);
    p.xi_d = ev_to_erg(1.1);
    p.rho = 2.329;
    p.u_t = 5.41e5;
    p.u_l = 9.04e5;
    p.s11 = 7.68e-13;
    p.s12 = -2.14e-13;
    p.a_si = angstrom_to_cm(5.431);
    p.a_par = angstrom_to_cm(14.2);
    p.a_perp = angstrom_to_cm(25.0);
    p.delta_c = mev_to_erg(1.76 / 6.0);
    p.nu0 = 2e14;
    p.t0 = 19.0;
    return p;
}

// key -> setter taking the API-unit value
const std::map<std::string, std::function<void(MaterialParams&, double)>>&
setters() {
    using namespace units;
    static const std::map<std::string,
                          std::function<void(MaterialParams&, double)>>
        m = {
            {"xi_u_eV", [](MaterialParams& p, double v) { p.xi_u = ev_to_erg(v); }},
            {"xi_d_eV", [](MaterialParams& p, double v) { p.xi_d = ev_to_erg(v); }},
            {"rho_g_cm3", [](MaterialParams& p, double v) { p.rho = v; }},
            {"u_t_cm_s", [](MaterialParams& p, double v) { p.u_t = v; }},
            {"u_l_cm_s", [](MaterialParams& p, double v) { p.u_l = v; }},
            {"s11_cm2_dyn", [](MaterialParams& p, double v) { p.s11 = v; }},
            {"s12_cm2_dyn", [](MaterialParams& p, double v) { p.s12 = v; }},
            {"a_si_angstrom",
             [](MaterialParams& p, double v) { p.a_si = angstrom_to_cm(v); }},
            {"a_par_angstrom",
             [](MaterialParams& p, double v) { p.a_par = angstrom_to_cm(v); }},
            {"a_perp_angstrom",
             [](MaterialParams& p, double v) { p.a_perp = angstrom_to_cm(v); }},
            {"delta_c_meV",
             [](MaterialParams& p, double v) { p.delta_c = mev_to_erg(v); }},
            {"nu0_hz", [](MaterialParams& p, double v) { p.nu0 = v; }},
            {"t0_k", [](MaterialParams& p, double v) { p.t0 = v; }},
        };
    return m;
}

}  // namespace

void validate(const MaterialParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw ValidationError(std::string(name) + " must be positive");
    };
    positive(p.xi_u, "xi_u");
    positive(p.rho, "rho");
    positive(p.u_t, "u_t");
    positive(p.u_l, "u_l");
    positive(p.s11, "s11");
    positive(p.a_si, "a_si");
    positive(p.a_par, "a_par");
    positive(p.a_perp, "a_perp");
    positive(p.delta_c, "delta_c");
    positive(p.nu0, "nu0");
    positive(p.t0, "t0");
    if (!(p.u_l > p.u_t))
        throw ValidationError("u_l must exceed u_t");
    if (!(p.s11 - p.s12 > 0.0))
        throw ValidationError("s11 - s12 must be positive");
}

MaterialParams build_materials(const Overrides& overrides) {
    MaterialParams p = defaults();
    const auto& table = setters();
    for (const auto& [key, value] : overrides) {
        auto it = table.find(key);
        if (it == table.end())
            throw ConfigError("unknown material override key: " + key);
        it->second(p, value);
    }
    validate(p);
    return p;
}

Overrides parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object of key -> number");
    Overrides out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number())
            throw ConfigError("config value for '" + it.key() +
                              "' is not a number");
        out[it.key()] = it.value().get<double>();
    }
    return out;
}

MaterialParams build_materials_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return build_materials(parse_config_json(ss.str()));
}

DerivedParams derive(const MaterialParams& p) {
    DerivedParams d;
    d.kappa0 = 0.6 * std::numbers::pi / p.a_si;
    d.sigma = p.xi_d / p.xi_u;
    d.t0_check = units::hbar * p.u_t / (p.a_perp * units::k_boltzmann);
    return d;
}

}  // namespace lidonor
