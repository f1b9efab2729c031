#pragma once

// Internal unit system is CGS-Gaussian: erg, cm, s, g, K.
// The public API accepts and returns meV, nm, ns, mK and dyn/cm^2;
// conversion happens only at the boundary, via the helpers below.

namespace lidonor::units {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-27;   // erg s
inline constexpr double k_boltzmann = 1.380649e-16; // erg/K
inline constexpr double erg_per_ev = 1.602176634e-12;
inline constexpr double erg_per_mev = 1.602176634e-15;

inline constexpr double cm_per_nm = 1e-7;
inline constexpr double cm_per_angstrom = 1e-8;
inline constexpr double s_per_ns = 1e-9;
inline constexpr double k_per_mk = 1e-3;

inline constexpr double mev_to_erg(double e_mev) { return e_mev * erg_per_mev; }
inline constexpr double erg_to_mev(double e_erg) { return e_erg / erg_per_mev; }
inline constexpr double ev_to_erg(double e_ev) { return e_ev * erg_per_ev; }
inline constexpr double nm_to_cm(double x_nm) { return x_nm * cm_per_nm; }
inline constexpr double cm_to_nm(double x_cm) { return x_cm / cm_per_nm; }
inline constexpr double angstrom_to_cm(double x) { return x * cm_per_angstrom; }
inline constexpr double cm_to_angstrom(double x) { return x / cm_per_angstrom; }
inline constexpr double ns_to_s(double t_ns) { return t_ns * s_per_ns; }
inline constexpr double s_to_ns(double t_s) { return t_s / s_per_ns; }
inline constexpr double mk_to_k(double t_mk) { return t_mk * k_per_mk; }
inline constexpr double k_to_mk(double t_k) { return t_k / k_per_mk; }

// E = hbar * omega
inline constexpr double energy_to_angular_frequency(double e_erg) {
    return e_erg / hbar;
}
inline constexpr double angular_frequency_to_energy(double omega) {
    return omega * hbar;
}

}  // namespace lidonor::units
