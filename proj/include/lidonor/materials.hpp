#pragma once

#include <map>
#include <string>

namespace lidonor {

// Si/Li material constants in internal CGS units.
//
// Defaults (overridable through build_materials):
//   xi_u   = 8.77 eV        uniaxial deformation potential, Si conduction band
//   xi_d   = 1.1 eV         dilational deformation potential
//   rho    = 2.329 g/cm^3   mass density of Si
//   u_t    = 5.41e5 cm/s    transverse sound speed
//   u_l    = 9.04e5 cm/s    longitudinal sound speed
//   s11    = 7.68e-13 cm^2/dyn   elastic compliance
//   s12    = -2.14e-13 cm^2/dyn  elastic compliance
//   a_si   = 5.431 A        Si lattice constant
//   a_par  = 14.2 A         longitudinal donor Bohr radius (Kohn-Luttinger)
//   a_perp = 25.0 A         transverse donor Bohr radius
//   delta_c: valley-orbit energy unit, 6*delta_c = 1.76 meV for Li:Si
//   nu0    = 2e14 Hz        dephasing prefactor
//   t0     = 19 K           dephasing temperature scale (hbar*u_t/a_perp)
struct MaterialParams {
    double xi_u;     // erg
    double xi_d;     // erg (may be any sign)
    double rho;      // g/cm^3
    double u_t;      // cm/s
    double u_l;      // cm/s
    double s11;      // cm^2/dyn
    double s12;      // cm^2/dyn
    double a_si;     // cm
    double a_par;    // cm
    double a_perp;   // cm
    double delta_c;  // erg
    double nu0;      // 1/s
    double t0;       // K
};

struct DerivedParams {
    double kappa0;    // 1/cm, closest intervalley separation 0.6*pi/a_si
    double sigma;     // xi_d/xi_u
    double t0_check;  // K, hbar*u_t/(a_perp*k_B)
};

// Override keys use API units in the names, e.g. "xi_u_eV": 8.77.
// Recognized keys: xi_u_eV, xi_d_eV, rho_g_cm3, u_t_cm_s, u_l_cm_s,
// s11_cm2_dyn, s12_cm2_dyn, a_si_angstrom, a_par_angstrom, a_perp_angstrom,
// delta_c_meV, nu0_hz, t0_k.
using Overrides = std::map<std::string, double>;

MaterialParams build_materials(const Overrides& overrides = {});

// Loads overrides from a JSON file (object of key -> number) and builds.
MaterialParams build_materials_from_file(const std::string& path);

Overrides parse_config_json(const std::string& text);

DerivedParams derive(const MaterialParams& p);

void validate(const MaterialParams& p);

}  // namespace lidonor
